// holdex: one-point Hölder extension toolkit. Every command re-verifies its
// own output before exiting 0; exit 2 means bad input, exit 3 means a
// verification failed (the certificate carries the failing tuple).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "holdex/json_io.hpp"
#include "holdex/selftest.hpp"

namespace {

constexpr const char* kToolVersion = "1.0.0";

using holdex::Json;

struct VerificationBlock {
    Json checks = Json::array();
    bool all_pass = true;

    void add(const std::string& name, bool pass, const Json& detail = nullptr) {
        Json entry{{"name", name}, {"pass", pass}};
        if (!detail.is_null()) entry["detail"] = detail;
        checks.push_back(std::move(entry));
        all_pass = all_pass && pass;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct LoadedProblem {
    holdex::Problem problem;
    std::string digest;
};

LoadedProblem load_problem(const std::string& path, const std::string& at_json = "") {
    const std::string bytes = read_file(path);
    LoadedProblem lp{holdex::problem_from_json(Json::parse(bytes)),
                     holdex::digest(bytes)};
    if (!at_json.empty()) {
        // inline override of the extension points
        lp.problem.extend_at.clear();
        for (const auto& row : Json::parse(at_json))
            lp.problem.extend_at.push_back(row.get<holdex::Point>());
        lp.digest = holdex::digest(bytes + "\n--at " + at_json);
    }
    return lp;
}

int emit(const std::string& command, const std::string& input_digest, Json results,
         const VerificationBlock& verification, const std::string& out_path) {
    Json cert{{"command", command},
              {"input_digest", input_digest},
              {"tool_version", kToolVersion},
              {"results", std::move(results)},
              {"verification",
               Json{{"checks", verification.checks}, {"all_pass", verification.all_pass}}}};
    const std::string text = cert.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        out << text;
    }
    return verification.all_pass ? 0 : 3;
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

const double kRelTol = 1e-9;

void verify_holder(const holdex::PartialMap& pm, VerificationBlock& v) {
    const double excess = holdex::holder_excess(pm);
    v.add("input map is (K,alpha)-Hölder", excess <= kRelTol, Json{{"excess", excess}});
}

// `check`: validate the problem, compute or confirm K.
int cmd_check(const std::string& command, const std::string& path,
              const std::string& out_path) {
    const LoadedProblem lp = load_problem(path);
    const holdex::PartialMap& pm = lp.problem.pm;
    VerificationBlock v;
    const double computed = pm.size() >= 2
                                ? holdex::holder_constant(pm, pm.params.alpha)
                                : 0.0;
    verify_holder(pm, v);
    Json results{{"K", pm.params.K},
                 {"K_given", lp.problem.K_given},
                 {"computed_holder_constant", computed},
                 {"alpha", pm.params.alpha},
                 {"points", pm.size()}};
    return emit(command, lp.digest, std::move(results), v, out_path);
}

// `feasible`: forced intervals at each extension point.
int cmd_feasible(const std::string& command, const std::string& path,
                 const std::string& at_json, const std::string& out_path) {
    const LoadedProblem lp = load_problem(path, at_json);
    const holdex::PartialMap& pm = lp.problem.pm;
    if (!pm.has_seq_values())
        throw std::invalid_argument("feasible: needs sequence-valued data");
    if (lp.problem.extend_at.empty())
        throw std::invalid_argument("feasible: extend_at must be nonempty");
    VerificationBlock v;
    verify_holder(pm, v);
    Json per_point = Json::array();
    for (const auto& x : lp.problem.extend_at) {
        const holdex::FeasibilityCertificate cert = holdex::forced_intervals(pm, x);
        const holdex::CFeasibility feas = holdex::c_feasible(pm, x);
        bool nonempty = !cert.tail_interval.empty;
        for (const auto& iv : cert.per_coordinate) nonempty = nonempty && !iv.empty;
        v.add("forced intervals nonempty", nonempty);
        v.add("c-extendability criterion", feas.feasible,
              Json{{"margin", feas.margin}});
        per_point.push_back(Json{{"at", x},
                                 {"certificate", holdex::certificate_to_json(cert)},
                                 {"feasible", feas.feasible},
                                 {"margin", feas.margin}});
    }
    return emit(command, lp.digest, Json{{"per_point", std::move(per_point)}}, v,
                out_path);
}

// `extend --target c0|c`: one-point extensions with traces, re-verified.
int cmd_extend(const std::string& command, const std::string& path,
               const std::string& target, const std::string& policy_name,
               const std::string& at_json, const std::string& out_path) {
    const LoadedProblem lp = load_problem(path, at_json);
    const holdex::PartialMap& pm = lp.problem.pm;
    if (!pm.has_seq_values())
        throw std::invalid_argument("extend: needs sequence-valued data");
    if (lp.problem.extend_at.empty())
        throw std::invalid_argument("extend: extend_at must be nonempty");
    const holdex::Policy policy = holdex::policy_from_string(policy_name);
    VerificationBlock v;
    verify_holder(pm, v);
    Json per_point = Json::array();
    for (const auto& x : lp.problem.extend_at) {
        Json entry{{"at", x}};
        holdex::EcSeq value;
        if (target == "c0") {
            auto [u, trace] = holdex::c0_extend(pm, x);
            v.add("output lies in c0 (tail = 0)", u.tail() == 0.0);
            entry["trace"] = holdex::c0_trace_to_json(trace);
            value = std::move(u);
        } else if (target == "c") {
            auto [g, trace] = holdex::c_extend(pm, x, policy);
            entry["trace"] = holdex::c_trace_to_json(trace);
            value = std::move(g);
        } else {
            throw std::invalid_argument("extend: target must be c0 or c");
        }
        const double excess = holdex::extension_excess(pm, x, value);
        v.add("extension is (K,alpha)-Hölder", excess <= kRelTol,
              Json{{"excess", excess}});
        entry["value"] = holdex::ecseq_to_json(value);
        per_point.push_back(std::move(entry));
    }
    return emit(command, lp.digest,
                Json{{"target", target}, {"per_point", std::move(per_point)}}, v,
                out_path);
}

// `partition --eps E`: covering of the problem's points viewed in linf(n).
int cmd_partition(const std::string& command, const std::string& path, double eps,
                  const std::string& out_path) {
    const std::string bytes = read_file(path);
    const Json j = Json::parse(bytes);
    std::vector<holdex::Point> M;
    for (const auto& row : j.at("points")) M.push_back(row.get<holdex::Point>());
    const holdex::PartitionTrace trace = holdex::linf_partition(M, eps);

    VerificationBlock v;
    const holdex::NormedSpace linf =
        holdex::NormedSpace::linf(static_cast<int>(M.empty() ? 1 : M.front().size()));
    std::vector<bool> covered(M.size(), false);
    bool norms_ok = true, dists_ok = true, reps_ok = true;
    for (const auto& cell : trace.cells) {
        const holdex::Point& rep = M[cell.representative];
        bool rep_member = false;
        for (std::size_t idx : cell.members) {
            covered[idx] = true;
            rep_member = rep_member || idx == cell.representative;
            norms_ok = norms_ok && linf.norm(M[idx]) >= linf.norm(rep) - eps - 1e-9;
            dists_ok = dists_ok && linf.dist(M[idx], rep) <=
                                       linf.norm(M[idx]) - linf.norm(rep) + eps + 1e-9;
        }
        reps_ok = reps_ok && rep_member;
    }
    bool all_covered = true;
    for (bool b : covered) all_covered = all_covered && b;
    v.add("every point covered", all_covered);
    v.add("representatives belong to their cells", reps_ok);
    v.add("norm lower bound per cell", norms_ok);
    v.add("distance upper bound per cell", dists_ok);
    return emit(command, holdex::digest(bytes),
                Json{{"partition", holdex::partition_to_json(trace)}}, v, out_path);
}

// `cover --space S --delta D`: cone covering directions for a space given
// inline as JSON.
int cmd_cover(const std::string& command, const std::string& space_json, double delta,
              const std::string& out_path) {
    const holdex::NormedSpace space =
        holdex::space_from_json(Json::parse(space_json));
    const holdex::ConeCover cover = holdex::cone_cover(space, delta);
    VerificationBlock v;
    bool unit = true;
    for (const auto& dir : cover.directions)
        unit = unit && std::abs(space.norm(dir) - 1.0) <= 1e-9;
    v.add("directions lie on the unit sphere", unit);
    bool assigns = true;
    for (const auto& dir : cover.directions)
        assigns = assigns && cover.assign(dir).has_value();
    v.add("every direction assigned to a cone", assigns);
    Json dirs = Json::array();
    for (const auto& d : cover.directions) dirs.push_back(d);
    return emit(command, holdex::digest(space_json),
                Json{{"delta", delta}, {"directions", std::move(dirs)}}, v, out_path);
}

// `ck-extend --modulus auto|file`: sup-formula extension into sampled C(K).
int cmd_ck_extend(const std::string& command, const std::string& path,
                  const std::string& modulus_arg, const std::string& at_json,
                  const std::string& out_path) {
    const LoadedProblem lp = load_problem(path, at_json);
    const holdex::PartialMap& pm = lp.problem.pm;
    if (pm.has_seq_values())
        throw std::invalid_argument("ck-extend: needs function-valued data");
    if (lp.problem.extend_at.empty())
        throw std::invalid_argument("ck-extend: extend_at must be nonempty");
    VerificationBlock v;
    verify_holder(pm, v);
    Json per_point = Json::array();
    for (const auto& x : lp.problem.extend_at) {
        const holdex::ModulusTable table = holdex::xi_modulus(pm, x);
        // --modulus file is parsed for auditability but the table is always
        // rebuilt from the data; a mismatch is a verification failure.
        if (modulus_arg != "auto") {
            const Json given = Json::parse(read_file(modulus_arg));
            v.add("supplied modulus matches the data",
                  given == holdex::modulus_to_json(table));
        }
        const holdex::FiniteFunction g = holdex::ck_extend(pm, x, table);
        const double excess = holdex::extension_excess(pm, x, g);
        v.add("extension is (K,alpha)-Hölder", excess <= kRelTol,
              Json{{"excess", excess}});
        per_point.push_back(Json{{"at", x},
                                 {"value", g},
                                 {"modulus", holdex::modulus_to_json(table)}});
    }
    return emit(command, lp.digest, Json{{"per_point", std::move(per_point)}}, v,
                out_path);
}

// `ck-check`: gauge feasibility with worst excess.
int cmd_ck_check(const std::string& command, const std::string& path, double delta,
                 const std::string& at_json, const std::string& out_path) {
    const LoadedProblem lp = load_problem(path, at_json);
    const holdex::PartialMap& pm = lp.problem.pm;
    if (pm.has_seq_values())
        throw std::invalid_argument("ck-check: needs function-valued data");
    if (lp.problem.extend_at.empty())
        throw std::invalid_argument("ck-check: extend_at must be nonempty");
    VerificationBlock v;
    verify_holder(pm, v);
    Json per_point = Json::array();
    for (const auto& x : lp.problem.extend_at) {
        const auto [ok, excess] = holdex::ck_feasible(pm, x, delta);
        v.add("gauge condition", ok, Json{{"excess", excess}});
        per_point.push_back(Json{{"at", x}, {"feasible", ok}, {"excess", excess}});
    }
    return emit(command, lp.digest,
                Json{{"delta", delta}, {"per_point", std::move(per_point)}}, v,
                out_path);
}

// `reduce --witnesses w.json`: sample a C(K)-valued map down to c.
int cmd_reduce(const std::string& command, const std::string& path,
               const std::string& witnesses_path, const std::string& out_path) {
    const LoadedProblem lp = load_problem(path);
    const holdex::PartialMap& pm = lp.problem.pm;
    if (pm.has_seq_values())
        throw std::invalid_argument("reduce: needs function-valued data");
    const Json wj = Json::parse(read_file(witnesses_path));
    std::vector<std::pair<std::size_t, std::size_t>> witnesses;
    for (const auto& pair : wj.at("witnesses"))
        witnesses.emplace_back(pair.at(0).get<std::size_t>(),
                               pair.at(1).get<std::size_t>());
    const holdex::PartialMap reduced = holdex::reduce_ck_to_c(pm, witnesses);
    VerificationBlock v;
    verify_holder(pm, v);
    const double before = pm.size() >= 2 ? holdex::holder_constant(pm, pm.params.alpha)
                                         : 0.0;
    const double after =
        reduced.size() >= 2 ? holdex::holder_constant(reduced, pm.params.alpha) : 0.0;
    v.add("reduction does not increase the Hölder constant",
          after <= before * (1.0 + 1e-12),
          Json{{"before", before}, {"after", after}});
    holdex::Problem out_problem;
    out_problem.pm = reduced;
    return emit(command, lp.digest,
                Json{{"reduced_problem", holdex::problem_to_json(out_problem)}}, v,
                out_path);
}

// `counterexample`: generate and verify the non-extendability instance.
int cmd_counterexample(const std::string& command, double K, int n1, int N,
                       double alpha, const std::string& out_path) {
    if (alpha != 1.0)
        throw std::invalid_argument("counterexample: only alpha = 1 is supported");
    const holdex::CounterexampleInstance inst = holdex::gen_counterexample(K, n1, N);
    const holdex::ObstructionCertificate cert = holdex::verify_counterexample(inst);
    VerificationBlock v;
    v.add("selection inequality for K", holdex::selection_ok(K),
          Json{{"value", holdex::selection_value(K)}, {"threshold", 0.375}});
    v.add("map is 1-Lipschitz",
          holdex::holder_constant(inst.pm, 1.0) <= 1.0 + 1e-9);
    v.add("forced oscillation bounds +-1/8", cert.oscillation_ok,
          Json{{"odd_lo_min", cert.odd_lo_min}, {"even_hi_max", cert.even_hi_max}});
    v.add("minimal prefix length reaches N", cert.minimal_prefix_length >= N,
          Json{{"minimal_prefix_length", cert.minimal_prefix_length}});
    holdex::Problem problem;
    problem.pm = inst.pm;
    Json results{{"K", K},
                 {"n0", inst.n0},
                 {"n1", inst.n1},
                 {"N", N},
                 {"max_safe_truncation", holdex::max_safe_truncation(K)},
                 {"instance", holdex::problem_to_json(problem)},
                 {"obstruction", holdex::obstruction_to_json(cert)}};
    const std::string echo = "counterexample K=" + std::to_string(K) +
                             " n1=" + std::to_string(n1) + " N=" + std::to_string(N);
    return emit(command, holdex::digest(echo), std::move(results), v, out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-point Hölder extension toolkit"};
    app.require_subcommand(1);
    const std::string command_echo = join_args(argc, argv);

    std::string problem_path, out_path;
    std::string target = "c", policy = "mid", modulus = "auto", witnesses_path;
    std::string space_json, at_json;
    double eps = 0.1, delta = 0.5, Kparam = 11.0, alpha = 1.0;
    int n1 = 1, N = 5;

    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "write the certificate here (default stdout)");
    };
    auto add_at = [&](CLI::App* sub) {
        sub->add_option("--at", at_json,
                        "extension points as inline JSON, overriding the problem file");
    };

    CLI::App* check = app.add_subcommand("check", "validate a problem and report K");
    check->add_option("problem", problem_path)->required();
    add_out(check);

    CLI::App* feasible =
        app.add_subcommand("feasible", "forced intervals at each extension point");
    feasible->add_option("problem", problem_path)->required();
    add_at(feasible);
    add_out(feasible);

    CLI::App* extend = app.add_subcommand("extend", "one-point extension into c0 or c");
    extend->add_option("problem", problem_path)->required();
    extend->add_option("--target", target, "c0 or c")->check(CLI::IsMember({"c0", "c"}));
    extend->add_option("--policy", policy, "lo, hi, or mid")
        ->check(CLI::IsMember({"lo", "hi", "mid"}));
    add_at(extend);
    add_out(extend);

    CLI::App* partition =
        app.add_subcommand("partition", "covering of the points in linf(n)");
    partition->add_option("problem", problem_path)->required();
    partition->add_option("--eps", eps, "covering tolerance")->required();
    add_out(partition);

    CLI::App* cover = app.add_subcommand("cover", "cone covering of a normed space");
    cover->add_option("--space", space_json, "space descriptor as inline JSON")
        ->required();
    cover->add_option("--delta", delta, "cone aperture")->required();
    add_out(cover);

    CLI::App* ck_extend =
        app.add_subcommand("ck-extend", "sup-formula extension into sampled C(K)");
    ck_extend->add_option("problem", problem_path)->required();
    ck_extend->add_option("--modulus", modulus, "auto, or a modulus table file");
    add_at(ck_extend);
    add_out(ck_extend);

    CLI::App* ck_check = app.add_subcommand("ck-check", "gauge feasibility check");
    ck_check->add_option("problem", problem_path)->required();
    ck_check->add_option("--delta", delta, "distance threshold for (t,s) pairs");
    add_at(ck_check);
    add_out(ck_check);

    CLI::App* reduce =
        app.add_subcommand("reduce", "sample a C(K)-valued map down to c");
    reduce->add_option("problem", problem_path)->required();
    reduce->add_option("--witnesses", witnesses_path, "witness pair file")->required();
    add_out(reduce);

    CLI::App* counterexample =
        app.add_subcommand("counterexample", "non-extendability certificate");
    counterexample->add_option("--K", Kparam);
    counterexample->add_option("--n1", n1);
    counterexample->add_option("--N", N);
    counterexample->add_option("--alpha", alpha);
    add_out(counterexample);

    app.add_subcommand("selftest", "run the full acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return cmd_check(command_echo, problem_path, out_path);
        if (feasible->parsed())
            return cmd_feasible(command_echo, problem_path, at_json, out_path);
        if (extend->parsed())
            return cmd_extend(command_echo, problem_path, target, policy, at_json,
                              out_path);
        if (partition->parsed())
            return cmd_partition(command_echo, problem_path, eps, out_path);
        if (cover->parsed()) return cmd_cover(command_echo, space_json, delta, out_path);
        if (ck_extend->parsed())
            return cmd_ck_extend(command_echo, problem_path, modulus, at_json,
                                 out_path);
        if (ck_check->parsed())
            return cmd_ck_check(command_echo, problem_path, delta, at_json, out_path);
        if (reduce->parsed())
            return cmd_reduce(command_echo, problem_path, witnesses_path, out_path);
        if (counterexample->parsed())
            return cmd_counterexample(command_echo, Kparam, n1, N, alpha, out_path);
        // selftest
        return holdex::run_selftest(std::cout) ? 0 : 3;
    } catch (const Json::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return 3;
    }
}
