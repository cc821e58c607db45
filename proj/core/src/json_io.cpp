#include "holdex/json_io.hpp"

#include <cstdint>
#include <cstdio>

namespace holdex {

namespace {

std::vector<Point> points_from_json(const Json& j) {
    std::vector<Point> out;
    for (const auto& row : j) out.push_back(row.get<Point>());
    return out;
}

Json points_to_json(const std::vector<Point>& points) {
    Json out = Json::array();
    for (const auto& p : points) out.push_back(p);
    return out;
}

} // namespace

NormedSpace space_from_json(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "lp")
        return NormedSpace::lp(j.at("p").get<double>(), j.at("dim").get<int>());
    if (type == "linf")
        return NormedSpace::linf(j.at("dim").get<int>());
    if (type == "l1sum") {
        std::vector<NormedSpace> parts;
        for (const auto& part : j.at("parts")) parts.push_back(space_from_json(part));
        return NormedSpace::l1_sum(std::move(parts));
    }
    if (type == "polytope")
        return NormedSpace::polytope(
            j.at("functionals").get<std::vector<std::vector<double>>>());
    throw std::invalid_argument("unknown space type: " + type);
}

Json space_to_json(const NormedSpace& space) {
    switch (space.kind()) {
        case NormedSpace::Kind::Lp:
            return Json{{"type", "lp"}, {"p", space.p()}, {"dim", space.dim()}};
        case NormedSpace::Kind::LInf:
            return Json{{"type", "linf"}, {"dim", space.dim()}};
        case NormedSpace::Kind::L1Sum: {
            Json parts = Json::array();
            for (const auto& part : space.parts()) parts.push_back(space_to_json(part));
            return Json{{"type", "l1sum"}, {"parts", std::move(parts)}};
        }
        case NormedSpace::Kind::Polytope:
            return Json{{"type", "polytope"}, {"functionals", space.functionals()}};
    }
    throw std::logic_error("unreachable");
}

EcSeq ecseq_from_json(const Json& j) {
    return EcSeq(j.at("prefix").get<std::vector<double>>(), j.at("tail").get<double>());
}

Json ecseq_to_json(const EcSeq& seq) {
    return Json{{"prefix", seq.prefix()}, {"tail", seq.tail()}};
}

FiniteMetricSpace metric_from_json(const Json& j) {
    if (j.contains("points_1d"))
        return FiniteMetricSpace::from_points_1d(
            j.at("points_1d").get<std::vector<double>>());
    return FiniteMetricSpace(j.at("rho").get<std::vector<std::vector<double>>>());
}

Json metric_to_json(const FiniteMetricSpace& metric) {
    return Json{{"rho", metric.matrix()}};
}

Json interval_to_json(const Interval& iv) {
    if (iv.empty) return Json{{"empty", true}};
    return Json{{"lo", iv.lo}, {"hi", iv.hi}, {"empty", false}};
}

Json certificate_to_json(const FeasibilityCertificate& cert) {
    Json coords = Json::array();
    for (const auto& iv : cert.per_coordinate) coords.push_back(interval_to_json(iv));
    return Json{{"per_coordinate", std::move(coords)},
                {"tail_interval", interval_to_json(cert.tail_interval)},
                {"margin", cert.margin},
                {"witness",
                 Json{{"y", cert.witness_y},
                      {"z", cert.witness_z},
                      {"coordinate", cert.witness_coordinate}}}};
}

Json c0_trace_to_json(const C0Trace& trace) {
    return Json{{"epsilon", trace.epsilon},
                {"cutoff", trace.cutoff},
                {"representatives", trace.representatives},
                {"eta", trace.eta},
                {"signs", trace.signs}};
}

Json c_trace_to_json(const CTrace& trace) {
    return Json{{"s_values", trace.s_values},
                {"s_inf", trace.s_inf},
                {"prefix_cutoff", trace.prefix_cutoff}};
}

Json partition_to_json(const PartitionTrace& trace) {
    Json cells = Json::array();
    for (const auto& cell : trace.cells) {
        Json path = Json::array();
        for (const auto& step : cell.path)
            path.push_back(Json{{"j", step.j},
                                {"delta", step.delta},
                                {"k", step.k},
                                {"eta", step.eta},
                                {"band", step.band},
                                {"band_width", step.band_width},
                                {"band_count", step.band_count}});
        cells.push_back(Json{{"members", cell.members},
                             {"representative", cell.representative},
                             {"path", std::move(path)}});
    }
    return Json{{"epsilon", trace.epsilon}, {"cells", std::move(cells)}};
}

Json modulus_to_json(const ModulusTable& table) {
    return Json{{"lambda_grid", table.lambda_grid}, {"xi", table.xi},
                {"xi0", table.xi0},                 {"psi", table.psi},
                {"phi_knots", table.phi_knots},     {"phi_values", table.phi_values},
                {"diameter", table.diameter}};
}

Json obstruction_to_json(const ObstructionCertificate& cert) {
    return Json{{"intervals", certificate_to_json(cert.intervals)},
                {"odd_lo_min", cert.odd_lo_min},
                {"even_hi_max", cert.even_hi_max},
                {"oscillation_ok", cert.oscillation_ok},
                {"minimal_prefix_length", cert.minimal_prefix_length}};
}

Problem problem_from_json(const Json& j) {
    NormedSpace space = space_from_json(j.at("space"));
    HolderParams params;
    params.alpha = j.at("alpha").get<double>();
    std::vector<Point> points = points_from_json(j.at("points"));

    const Json& values = j.at("values");
    if (values.empty())
        throw std::invalid_argument("problem: values must be nonempty");

    Problem problem;
    problem.K_given = j.contains("K");
    params.K = problem.K_given ? j.at("K").get<double>() : 1.0;

    if (values.front().is_object()) {
        std::vector<EcSeq> seqs;
        for (const auto& v : values) seqs.push_back(ecseq_from_json(v));
        problem.pm = make_seq_map(std::move(space), params, std::move(points),
                                  std::move(seqs));
    } else {
        if (!j.contains("metric_space"))
            throw std::invalid_argument(
                "problem: function values need a metric_space block");
        FiniteMetricSpace metric = metric_from_json(j.at("metric_space"));
        std::vector<FiniteFunction> fns;
        for (const auto& v : values) fns.push_back(v.get<FiniteFunction>());
        problem.pm = make_fn_map(std::move(space), params, std::move(points),
                                 std::move(metric), std::move(fns));
    }
    if (!problem.K_given)
        problem.pm.params.K = holder_constant(problem.pm, params.alpha);
    if (j.contains("extend_at")) problem.extend_at = points_from_json(j.at("extend_at"));
    return problem;
}

Json problem_to_json(const Problem& problem) {
    Json j{{"space", space_to_json(problem.pm.space)},
           {"alpha", problem.pm.params.alpha},
           {"K", problem.pm.params.K},
           {"points", points_to_json(problem.pm.points)},
           {"extend_at", points_to_json(problem.extend_at)}};
    Json values = Json::array();
    if (problem.pm.has_seq_values()) {
        for (const auto& s : problem.pm.seq_values().seqs)
            values.push_back(ecseq_to_json(s));
    } else {
        for (const auto& f : problem.pm.fn_values().fns) values.push_back(f);
        j["metric_space"] = metric_to_json(problem.pm.fn_values().metric);
    }
    j["values"] = std::move(values);
    return j;
}

Policy policy_from_string(const std::string& name) {
    if (name == "lo") return Policy::Lo;
    if (name == "hi") return Policy::Hi;
    if (name == "mid") return Policy::Mid;
    throw std::invalid_argument("unknown policy: " + name);
}

std::string digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace holdex
