#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "oransim/traffic.hpp"

namespace oransim {

struct KpiTuple {
    int ue_id = 0;
    Direction dir = Direction::Dl;
    double throughput_mbps = 0.0;
    double mean_delay_ms = 0.0;
    double mean_mcs = 0.0;
    double tti_allocation_pct = 0.0;

    bool operator==(const KpiTuple&) const = default;
};

struct Indication {
    std::uint64_t tti = 0;
    std::uint64_t window_index = 0;
    double cell_throughput_mbps = 0.0;
    double mean_delay_ms = 0.0;
    double jain = 0.0;
    std::vector<KpiTuple> ues;

    bool operator==(const Indication&) const = default;
};

struct Control {
    std::uint64_t tti = 0;
    std::string policy;

    bool operator==(const Control&) const = default;
};

struct Ack {
    std::uint64_t tti = 0;
    bool accepted = false;
    std::uint64_t effective_tti = 0;

    bool operator==(const Ack&) const = default;
};

struct E2Message {
    std::variant<Indication, Control, Ack> payload;

    bool operator==(const E2Message&) const = default;
};

class E2ParseError : public std::runtime_error {
public:
    E2ParseError(int line_no, int field_index, const std::string& what)
        : std::runtime_error("E2 parse error at line " + std::to_string(line_no) +
                             ", field " + std::to_string(field_index) + ": " + what),
          line_no(line_no), field_index(field_index) {}

    int line_no;
    int field_index;
};

// One message per line, '|'-delimited fields in fixed order, decimal numerics
// rendered with 6 significant digits, newline terminated.
std::string encode_message(const E2Message& msg);
E2Message decode_message(const std::string& line, int line_no = 1);

// Quantize to the wire precision (6 significant digits).
double wire_round(double v);

enum class Comparator : std::uint8_t { Lt, Le, Gt, Ge };

struct A1Rule {
    std::string field;       // jain | cell_throughput_mbps | mean_delay_ms
    Comparator op = Comparator::Lt;
    double threshold = 0.0;
    std::string target_policy;
};

struct A1Policy {
    enum class Mode : std::uint8_t { Static, Adaptive };
    Mode mode = Mode::Static;
    std::string static_policy = "rr";
    std::vector<A1Rule> rules;
    int evaluation_period = 1;  // report windows between rule evaluations
    int hysteresis = 1;         // min windows between policy switches

    static A1Policy parse(std::istream& in, const std::string& origin = "<a1>");
    static A1Policy load(const std::string& path);
};

struct XappState {
    std::string active_policy = "rr";
    std::optional<std::string> pending_policy;
    std::int64_t last_switch_window = -1;
    std::vector<Indication> history;
};

// Decide whether the report warrants a policy switch. Static mode converges on
// the configured policy once; adaptive mode fires the first matching rule,
// subject to hysteresis.
std::optional<Control> xapp_evaluate(XappState& state, const Indication& report,
                                     const A1Policy& policy);

// Drives XappState from a stream of encoded E2 lines (used by both the
// in-process endpoint and the standalone socket xApp).
class Xapp {
public:
    explicit Xapp(A1Policy policy, std::string initial_active = "rr")
        : policy_(std::move(policy)) {
        state_.active_policy = std::move(initial_active);
    }

    // feed one wire line; returns an encoded Control line to send back, if any
    std::optional<std::string> on_line(const std::string& line, int line_no = 1);

    const XappState& state() const { return state_; }

private:
    A1Policy policy_;
    XappState state_;
};

}  // namespace oransim
