#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oransim/engine.hpp"
#include "oransim/ric.hpp"

namespace py = pybind11;
using namespace oransim;

namespace {

PolicyKind policy_arg(const std::string& name) {
    PolicyKind kind;
    if (!policy_from_name(name, &kind))
        throw py::value_error("unknown policy: " + name);
    return kind;
}

py::dict summary_dict(const RunSummary& s) {
    py::dict d;
    d["policy"] = policy_name(s.policy);
    d["n_ues"] = s.n_ues;
    d["seed"] = s.seed;
    d["avg_ue_throughput_mbps"] = s.avg_ue_throughput_mbps;
    d["cell_throughput_mbps"] = s.cell_throughput_mbps;
    d["avg_delay_ms"] = s.avg_delay_ms;
    d["jain"] = s.jain;
    return d;
}

py::dict ue_dict(const UeStats& u) {
    py::dict d;
    d["ue_id"] = u.ue_id;
    d["direction"] = direction_name(u.dir);
    d["demand_class"] = u.demand_class;
    d["throughput_mbps"] = u.throughput_mbps;
    d["mean_delay_ms"] = u.mean_delay_ms;
    d["mean_mcs"] = u.mean_mcs;
    d["tti_allocation_pct"] = u.tti_allocation_pct;
    d["mean_symbols"] = u.mean_symbols_per_alloc;
    return d;
}

}  // namespace

PYBIND11_MODULE(_oransim, m) {
    m.doc() = "single-cell NR MAC simulator with pluggable schedulers";

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("bandwidth_hz", &ScenarioConfig::bandwidth_hz)
        .def_readwrite("mu", &ScenarioConfig::mu)
        .def_readwrite("carrier_freq_ghz", &ScenarioConfig::carrier_freq_ghz)
        .def_readwrite("n_prb", &ScenarioConfig::n_prb)
        .def_readwrite("tx_power_dbm", &ScenarioConfig::tx_power_dbm)
        .def_readwrite("noise_figure_db", &ScenarioConfig::noise_figure_db)
        .def_readwrite("cell_radius_m", &ScenarioConfig::cell_radius_m)
        .def_readwrite("shadowing_sigma_db", &ScenarioConfig::shadowing_sigma_db)
        .def_readwrite("n_ues", &ScenarioConfig::n_ues)
        .def_readwrite("packet_size_bytes", &ScenarioConfig::packet_size_bytes)
        .def_readwrite("demand_class_override", &ScenarioConfig::demand_class_override)
        .def_readwrite("duration_ttis", &ScenarioConfig::duration_ttis)
        .def_readwrite("warmup_ttis", &ScenarioConfig::warmup_ttis)
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def_property(
            "policy",
            [](const ScenarioConfig& c) { return std::string(policy_name(c.policy)); },
            [](ScenarioConfig& c, const std::string& p) { c.policy = policy_arg(p); })
        .def_property(
            "spread_placement",
            [](const ScenarioConfig& c) { return c.placement == Placement::Spread; },
            [](ScenarioConfig& c, bool spread) {
                c.placement = spread ? Placement::Spread : Placement::Annulus;
            })
        .def("validate", &ScenarioConfig::validate);

    m.def(
        "run_scenario",
        [](const ScenarioConfig& cfg) {
            const RunResult r = run(cfg);
            py::dict out;
            out["summary"] = summary_dict(r.summary);
            py::list ues;
            for (const auto& u : r.ue_stats) ues.append(ue_dict(u));
            out["ue_stats"] = ues;
            out["n_switches"] = r.switches.size();
            return out;
        },
        py::arg("config"));

    m.def("slots_per_subframe", &slots_per_subframe, py::arg("mu"));
    m.def("slot_duration_ms", &slot_duration_ms, py::arg("mu"));
    m.def("pathloss_los_db", &pathloss_los_db, py::arg("distance_m"), py::arg("fc_ghz"));
    m.def("noise_power_dbm", &noise_power_dbm, py::arg("bandwidth_hz"),
          py::arg("noise_figure_db"));
    m.def("snr_to_cqi", &snr_to_cqi, py::arg("snr_db"), py::arg("backoff_db") = 6.0);
    m.def(
        "cqi_to_mcs", [](int cqi) { return cqi_to_mcs(cqi); }, py::arg("cqi"));
    m.def(
        "transport_block_bits",
        [](int mcs, int n_symbols, int n_prb) {
            return transport_block_bits(mcs, n_symbols, n_prb);
        },
        py::arg("mcs"), py::arg("n_symbols"), py::arg("n_prb") = 24);
    m.def(
        "jain_index",
        [](const std::vector<double>& xs) { return jain_index(xs); },
        py::arg("values"));
    m.def(
        "decode_line",
        [](const std::string& line) {
            const E2Message msg = decode_message(line);
            py::dict d;
            if (const auto* ind = std::get_if<Indication>(&msg.payload)) {
                d["type"] = "indication";
                d["tti"] = ind->tti;
                d["jain"] = ind->jain;
                d["cell_throughput_mbps"] = ind->cell_throughput_mbps;
                d["n_ues"] = ind->ues.size();
            } else if (const auto* ctl = std::get_if<Control>(&msg.payload)) {
                d["type"] = "control";
                d["tti"] = ctl->tti;
                d["policy"] = ctl->policy;
            } else {
                const auto& ack = std::get<Ack>(msg.payload);
                d["type"] = "ack";
                d["tti"] = ack.tti;
                d["accepted"] = ack.accepted;
                d["effective_tti"] = ack.effective_tti;
            }
            return d;
        },
        py::arg("line"));
}
