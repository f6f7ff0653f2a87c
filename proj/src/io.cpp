#include "netclear/io.hpp"

#include <fstream>
#include <string>

namespace netclear::io {

namespace {

json nodes_1based(const NodeSet& s) {
    json arr = json::array();
    for (std::size_t i : s) arr.push_back(i + 1);
    return arr;
}

}  // namespace

RawSystem parse_instance(const json& j) {
    RawSystem raw;
    try {
        raw.n = j.at("n").get<std::size_t>();
        raw.pi = j.at("pi").get<std::vector<Vec>>();
        raw.p_bar = j.at("p_bar").get<Vec>();
        raw.e = j.at("e").get<Vec>();
    } catch (const json::exception& ex) {
        throw ValidationError(std::string("malformed instance: ") + ex.what());
    }
    return raw;
}

RawSystem load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw ValidationError("cannot parse " + path.string() + ": " + ex.what());
    }
    return parse_instance(j);
}

json instance_json(const RawSystem& raw) {
    return json{{"n", raw.n}, {"pi", raw.pi}, {"p_bar", raw.p_bar}, {"e", raw.e}};
}

json instance_json(const FinancialSystem& sys) { return instance_json(sys.to_raw()); }

void save_instance(const FinancialSystem& sys, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << instance_json(sys).dump(2) << '\n';
}

json partition_json(const NodePartition& part) {
    return json{{"P", nodes_1based(part.funded)},
                {"A", nodes_1based(part.upstream)},
                {"N", nodes_1based(part.stranded)}};
}

json analyze_json(const FinancialSystem& sys) {
    const auto reg = is_regular(sys);
    const auto part = partition_nodes(sys);

    json orbits = json::object();
    for (std::size_t i = 0; i < sys.size(); ++i)
        orbits[std::to_string(i + 1)] = nodes_1based(risk_orbit(sys, i));

    json j{{"regular", reg.regular},
           {"witness", nullptr},
           {"P", nodes_1based(part.funded)},
           {"A", nodes_1based(part.upstream)},
           {"N", nodes_1based(part.stranded)},
           {"orbits", std::move(orbits)}};
    if (reg.witness) j["witness"] = *reg.witness + 1;
    return j;
}

json solve_report_json(const SolveReport& report) {
    json j{{"p_star", report.p_star},
           {"method", std::string(method_name(report.method))},
           {"iterations", report.iterations},
           {"residual_ll", report.residual_limited_liability},
           {"residual_ap", report.residual_priority},
           {"bracket_gap", nullptr},
           {"partition", nullptr}};
    if (report.bracket_gap) j["bracket_gap"] = *report.bracket_gap;
    if (report.partition) j["partition"] = partition_json(*report.partition);
    return j;
}

json certificate_json(const PositivityCertificate& cert) {
    json chain = json::array();
    for (char ok : cert.chain_ok) chain.push_back(static_cast<bool>(ok));
    json e_hat = json::array();
    for (double v : cert.cash_indicator) e_hat.push_back(v > 0.0 ? 1 : 0);
    return json{{"delta", cert.delta},
                {"e_hat", std::move(e_hat)},
                {"chain_ok", std::move(chain)},
                {"strictly_positive_at_n", cert.strictly_positive_at_n},
                {"final_iterate", cert.iterate_at_n}};
}

json fixed_point_set_json(const FixedPointSet& fps) {
    json j{{"points", fps.points},
           {"is_singleton", fps.is_singleton},
           {"continuum_detected", fps.continuum_detected},
           {"family", nullptr},
           {"singular_candidates", fps.singular_candidates}};
    if (fps.family) {
        j["family"] = json{{"base", fps.family->base},
                           {"direction", fps.family->direction},
                           {"t_lo", fps.family->t_lo},
                           {"t_hi", fps.family->t_hi}};
    }
    return j;
}

}  // namespace netclear::io
