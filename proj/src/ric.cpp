#include "oransim/ric.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace oransim {

namespace {

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '\n') break;
        if (c == '|') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

class FieldReader {
public:
    FieldReader(std::vector<std::string> fields, int line_no)
        : fields_(std::move(fields)), line_no_(line_no) {}

    const std::string& str() {
        if (pos_ >= fields_.size())
            throw E2ParseError(line_no_, static_cast<int>(pos_), "truncated message");
        return fields_[pos_++];
    }

    double num() {
        const std::string& s = str();
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw E2ParseError(line_no_, field_index(), "not a number: '" + s + "'");
        return v;
    }

    std::uint64_t uint() {
        const std::string& s = str();
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
        if (end == s.c_str() || *end != '\0')
            throw E2ParseError(line_no_, field_index(), "not an integer: '" + s + "'");
        return v;
    }

    Direction dir() {
        const std::string& s = str();
        if (s == "DL") return Direction::Dl;
        if (s == "UL") return Direction::Ul;
        throw E2ParseError(line_no_, field_index(), "bad direction: '" + s + "'");
    }

    void done() {
        if (pos_ != fields_.size())
            throw E2ParseError(line_no_, static_cast<int>(pos_), "trailing fields");
    }

    int field_index() const { return static_cast<int>(pos_) - 1; }
    int line_no() const { return line_no_; }

private:
    std::vector<std::string> fields_;
    std::size_t pos_ = 0;
    int line_no_;
};

}  // namespace

double wire_round(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::strtod(buf, nullptr);
}

std::string encode_message(const E2Message& msg) {
    std::ostringstream out;
    if (const auto* ind = std::get_if<Indication>(&msg.payload)) {
        out << "IND|" << ind->tti << '|' << ind->window_index << '|'
            << fmt_num(ind->cell_throughput_mbps) << '|' << fmt_num(ind->mean_delay_ms)
            << '|' << fmt_num(ind->jain) << '|' << ind->ues.size();
        for (const auto& u : ind->ues) {
            out << '|' << u.ue_id << '|' << direction_name(u.dir) << '|'
                << fmt_num(u.throughput_mbps) << '|' << fmt_num(u.mean_delay_ms) << '|'
                << fmt_num(u.mean_mcs) << '|' << fmt_num(u.tti_allocation_pct);
        }
    } else if (const auto* ctl = std::get_if<Control>(&msg.payload)) {
        out << "CTL|" << ctl->tti << '|' << ctl->policy;
    } else {
        const auto& ack = std::get<Ack>(msg.payload);
        out << "ACK|" << ack.tti << '|' << (ack.accepted ? 1 : 0) << '|'
            << ack.effective_tti;
    }
    out << '\n';
    return out.str();
}

E2Message decode_message(const std::string& line, int line_no) {
    FieldReader f(split_fields(line), line_no);
    const std::string kind = f.str();
    if (kind == "IND") {
        Indication ind;
        ind.tti = f.uint();
        ind.window_index = f.uint();
        ind.cell_throughput_mbps = f.num();
        ind.mean_delay_ms = f.num();
        ind.jain = f.num();
        const std::uint64_t n = f.uint();
        if (n > 1000) throw E2ParseError(line_no, f.field_index(), "implausible UE count");
        for (std::uint64_t i = 0; i < n; ++i) {
            KpiTuple u;
            u.ue_id = static_cast<int>(f.uint());
            u.dir = f.dir();
            u.throughput_mbps = f.num();
            u.mean_delay_ms = f.num();
            u.mean_mcs = f.num();
            u.tti_allocation_pct = f.num();
            ind.ues.push_back(u);
        }
        f.done();
        return E2Message{ind};
    }
    if (kind == "CTL") {
        Control ctl;
        ctl.tti = f.uint();
        ctl.policy = f.str();
        f.done();
        if (ctl.policy.empty())
            throw E2ParseError(line_no, 2, "empty policy name");
        return E2Message{ctl};
    }
    if (kind == "ACK") {
        Ack ack;
        ack.tti = f.uint();
        ack.accepted = f.uint() != 0;
        ack.effective_tti = f.uint();
        f.done();
        return E2Message{ack};
    }
    throw E2ParseError(line_no, 0, "unknown message kind: '" + kind + "'");
}

namespace {

bool known_kpi_field(const std::string& f) {
    return f == "jain" || f == "cell_throughput_mbps" || f == "mean_delay_ms";
}

Comparator parse_comparator(const std::string& s, const std::string& where) {
    if (s == "<") return Comparator::Lt;
    if (s == "<=") return Comparator::Le;
    if (s == ">") return Comparator::Gt;
    if (s == ">=") return Comparator::Ge;
    throw std::runtime_error(where + ": bad comparator '" + s + "'");
}

}  // namespace

A1Policy A1Policy::parse(std::istream& in, const std::string& origin) {
    A1Policy p;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key, eq;
        if (!(ls >> key)) continue;
        const std::string where = origin + ":" + std::to_string(lineno);
        if (!(ls >> eq) || eq != "=")
            throw std::runtime_error(where + ": expected 'key = value'");
        if (key == "mode") {
            std::string v;
            ls >> v;
            if (v == "static") p.mode = Mode::Static;
            else if (v == "adaptive") p.mode = Mode::Adaptive;
            else throw std::runtime_error(where + ": bad mode '" + v + "'");
        } else if (key == "static_policy") {
            ls >> p.static_policy;
        } else if (key == "evaluation_period") {
            ls >> p.evaluation_period;
        } else if (key == "hysteresis") {
            ls >> p.hysteresis;
        } else if (key == "rule") {
            // field op threshold -> policy
            A1Rule r;
            std::string op, arrow;
            if (!(ls >> r.field >> op >> r.threshold >> arrow >> r.target_policy) ||
                arrow != "->")
                throw std::runtime_error(where + ": expected 'field op threshold -> policy'");
            if (!known_kpi_field(r.field))
                throw std::runtime_error(where + ": unknown KPI field '" + r.field + "'");
            r.op = parse_comparator(op, where);
            p.rules.push_back(r);
        } else {
            throw std::runtime_error(where + ": unknown key '" + key + "'");
        }
    }
    if (p.hysteresis < 1) throw std::runtime_error(origin + ": hysteresis must be >= 1");
    if (p.evaluation_period < 1)
        throw std::runtime_error(origin + ": evaluation_period must be >= 1");
    return p;
}

A1Policy A1Policy::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open A1 policy file: " + path);
    return parse(in, path);
}

namespace {

double kpi_value(const Indication& report, const std::string& field) {
    if (field == "jain") return report.jain;
    if (field == "cell_throughput_mbps") return report.cell_throughput_mbps;
    return report.mean_delay_ms;
}

bool holds(Comparator op, double value, double threshold) {
    switch (op) {
        case Comparator::Lt: return value < threshold;
        case Comparator::Le: return value <= threshold;
        case Comparator::Gt: return value > threshold;
        case Comparator::Ge: return value >= threshold;
    }
    return false;
}

}  // namespace

std::optional<Control> xapp_evaluate(XappState& state, const Indication& report,
                                     const A1Policy& policy) {
    state.history.push_back(report);
    const auto window = static_cast<std::int64_t>(report.window_index);

    const std::string& effective =
        state.pending_policy ? *state.pending_policy : state.active_policy;

    if (policy.mode == A1Policy::Mode::Static) {
        if (effective == policy.static_policy) return std::nullopt;
        state.pending_policy = policy.static_policy;
        state.last_switch_window = window;
        return Control{report.tti, policy.static_policy};
    }

    if (window % policy.evaluation_period != 0) return std::nullopt;
    if (state.last_switch_window >= 0 &&
        window - state.last_switch_window < policy.hysteresis)
        return std::nullopt;

    for (const auto& rule : policy.rules) {
        if (!holds(rule.op, kpi_value(report, rule.field), rule.threshold)) continue;
        if (rule.target_policy == effective) return std::nullopt;  // already there
        state.pending_policy = rule.target_policy;
        state.last_switch_window = window;
        return Control{report.tti, rule.target_policy};
    }
    return std::nullopt;
}

std::optional<std::string> Xapp::on_line(const std::string& line, int line_no) {
    const E2Message msg = decode_message(line, line_no);
    if (const auto* ack = std::get_if<Ack>(&msg.payload)) {
        if (state_.pending_policy) {
            if (ack->accepted) state_.active_policy = *state_.pending_policy;
            state_.pending_policy.reset();
        }
        return std::nullopt;
    }
    if (const auto* ind = std::get_if<Indication>(&msg.payload)) {
        if (auto ctl = xapp_evaluate(state_, *ind, policy_))
            return encode_message(E2Message{*ctl});
        return std::nullopt;
    }
    return std::nullopt;  // Controls are xApp-originated; ignore echoes
}

}  // namespace oransim
