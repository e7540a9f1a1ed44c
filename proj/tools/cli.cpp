#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "packedness/exact.hpp"
#include "packedness/generate.hpp"
#include "packedness/haq.hpp"
#include "packedness/mpc.hpp"
#include "packedness/relative.hpp"
#include "packedness/sweep.hpp"
#include "packedness/wspd.hpp"

namespace packedness::cli {

namespace {

const std::vector<std::string> kAlgos{"exact", "vertex-relative", "s-relative", "wspd", "sweep", "mpc"};

nlohmann::json report_json(const PackednessReport& r) {
    auto j = to_json(r);
    if (!std::isfinite(r.certified_hi)) j["certified_hi"] = nullptr;
    return j;
}

nlohmann::json curve_json(const PolyCurve& c) {
    return {{"vertices", c.num_vertices()}, {"edges", c.num_edges()}, {"parts", c.num_parts()}, {"closed", c.closed()}};
}

}  // namespace

void validate(const AlgoParams& p) {
    if (std::find(kAlgos.begin(), kAlgos.end(), p.algo) == kAlgos.end()) {
        throw std::invalid_argument("unknown algorithm '" + p.algo + "'");
    }
    const bool wants_eps = p.algo == "wspd" || p.algo == "sweep";
    if (wants_eps && !p.epsilon) throw std::invalid_argument("--epsilon is required for --algo " + p.algo);
    if (!wants_eps && p.epsilon) throw std::invalid_argument("--epsilon does not apply to --algo " + p.algo);
    if (p.algo == "mpc" && !p.eta) throw std::invalid_argument("--eta is required for --algo mpc");
    if (p.algo != "mpc" && p.eta) throw std::invalid_argument("--eta only applies to --algo mpc");
    if (p.algo == "s-relative" && !p.have_anchors) throw std::invalid_argument("--anchors is required for --algo s-relative");
    if (p.algo != "s-relative" && p.have_anchors) throw std::invalid_argument("--anchors only applies to --algo s-relative");
    if (p.fallback_scale && p.algo != "sweep") throw std::invalid_argument("--fallback-scale only applies to --algo sweep");
    if (p.threads == 0) throw std::invalid_argument("--threads must be at least 1");
}

nlohmann::json run_algorithm(const PolyCurve& curve, const AlgoParams& p) {
    validate(p);
    nlohmann::json j;
    nlohmann::json params = {{"threads", p.threads}};
    if (p.algo == "exact") {
        ExactOptions o;
        o.threads = p.threads;
        j = report_json(min_c_exact(curve, o));
    } else if (p.algo == "vertex-relative") {
        auto r = vertex_relative(curve, {true, p.threads});
        const auto b = packedness_bounds_from_vr(r.c_estimate);
        r.certified_lo = b.lo;
        r.certified_hi = b.hi;
        j = report_json(r);
    } else if (p.algo == "s-relative") {
        auto r = s_relative_exact(curve, p.anchors);
        r.certified_hi = std::numeric_limits<double>::infinity();
        j = report_json(r);
        params["anchors"] = p.anchors.size();
    } else if (p.algo == "wspd") {
        j = report_json(min_c_wspd(curve, *p.epsilon));
        params["epsilon"] = *p.epsilon;
    } else if (p.algo == "sweep") {
        SweepOptions o;
        o.fallback_scale = p.fallback_scale;
        j = report_json(min_c_sweep(curve, *p.epsilon, o));
        params["epsilon"] = *p.epsilon;
        params["fallback_scale"] = p.fallback_scale;
    } else {
        auto res = mpc_vertex_relative(curve, *p.eta, p.c_mem, !p.vertex_radii_only);
        res.report.certified_hi = std::numeric_limits<double>::infinity();
        j = report_json(res.report);
        j["round_log"] = to_json(res.log);
        j["round_log"]["bound"] = res.config.round_bound();
        j["round_log"]["machine_memory"] = res.config.machine_memory();
        j["round_log"]["memory_cap"] = res.config.memory_cap();
        j["round_log"]["machine_count"] = res.config.machine_count();
        params["eta"] = *p.eta;
        params["c_mem"] = p.c_mem;
        params["extended"] = !p.vertex_radii_only;
    }
    j["params"] = params;
    j["curve"] = curve_json(curve);
    return j;
}

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kPrecondition;
    } catch (const MpcMemoryFault& e) {
        err << "error: " << e.what() << '\n';
        return kPrecondition;
    } catch (const CurveError& e) {
        err << "error: " << e.what();
        if (e.line() > 0) err << " (line " << e.line() << ")";
        err << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

AlgoParams params_from_case(const nlohmann::json& c) {
    AlgoParams p;
    p.algo = c.at("algo").get<std::string>();
    if (c.contains("epsilon")) p.epsilon = c["epsilon"].get<double>();
    if (c.contains("eta")) p.eta = c["eta"].get<double>();
    if (c.contains("threads")) p.threads = c["threads"].get<unsigned>();
    if (c.contains("fallback_scale")) p.fallback_scale = c["fallback_scale"].get<bool>();
    if (c.contains("c_mem")) p.c_mem = c["c_mem"].get<double>();
    return p;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum packedness of polygonal curves", "packedness"};
    app.require_subcommand(1);
    app.allow_extras(false);

    std::string curve_path;
    AlgoParams ap;
    std::string anchors_path;
    double eps_in = 0, eta_in = 0;
    auto* pack = app.add_subcommand("pack", "Compute the packedness constant of a curve");
    pack->add_option("curve", curve_path, "Curve file (.csv or .json)")->required();
    pack->add_option("--algo", ap.algo, "Algorithm")->required()->check(CLI::IsMember(kAlgos));
    auto* eps_opt = pack->add_option("--epsilon", eps_in, "Approximation parameter (wspd, sweep)");
    auto* eta_opt = pack->add_option("--eta", eta_in, "Memory exponent (mpc)");
    pack->add_option("--anchors", anchors_path, "Anchor point file (s-relative)");
    pack->add_option("--threads", ap.threads, "Worker threads")->default_val(1);
    pack->add_flag("--fallback-scale", ap.fallback_scale, "Sweep: start the ladder from the smallest feature when delta is absent");
    pack->add_option("--c-mem", ap.c_mem, "MPC memory cap multiplier")->default_val(16.0);
    pack->add_flag("--vertex-radii-only", ap.vertex_radii_only, "MPC: evaluate vertex-pair radii only");

    double cx = 0, cy = 0, qr = 0;
    std::string backend = "scan";
    auto* query = app.add_subcommand("query", "Length of the curve inside a disk");
    query->add_option("curve", curve_path, "Curve file")->required();
    query->add_option("--cx", cx, "Center x")->required();
    query->add_option("--cy", cy, "Center y")->required();
    query->add_option("--r", qr, "Radius")->required();
    query->add_option("--backend", backend, "scan or haq")->check(CLI::IsMember({"scan", "haq"}))->default_val("scan");

    std::string kind;
    std::size_t gen_n = 0;
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("gen", "Generate a curve as CSV");
    gen->add_option("--kind", kind, "walk, spiral, star, grid or integer")
        ->required()
        ->check(CLI::IsMember({"walk", "spiral", "star", "grid", "integer"}));
    gen->add_option("--n", gen_n, "Number of vertices")->required();
    gen->add_option("--seed", seed, "Random seed")->default_val(0);

    std::string suite_path;
    auto* bench = app.add_subcommand("bench", "Run a benchmark suite, one JSON line per case");
    bench->add_option("--suite", suite_path, "Suite file (JSON)")->required();

    std::vector<std::string> argv_store{"packedness"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    if (*pack) {
        return guarded(err, [&] {
            if (*eps_opt) ap.epsilon = eps_in;
            if (*eta_opt) ap.eta = eta_in;
            if (!anchors_path.empty()) {
                ap.anchors = load_points_file(anchors_path);
                ap.have_anchors = true;
            }
            validate(ap);
            const auto curve = load_curve_file(curve_path);
            out << run_algorithm(curve, ap).dump() << '\n';
            return static_cast<int>(kOk);
        });
    }
    if (*query) {
        return guarded(err, [&] {
            const auto curve = load_curve_file(curve_path);
            const Disk q{{cx, cy}, qr};
            if (!is_finite(q.center) || !std::isfinite(qr)) throw std::invalid_argument("query disk must be finite");
            nlohmann::json j = {{"backend", backend}, {"cx", cx}, {"cy", cy}, {"r", qr}};
            if (backend == "scan") {
                j["length"] = length_query_scan(curve, q);
            } else {
                if (!(qr > 0.0)) throw std::invalid_argument("--r must be positive for the haq backend");
                Stopwatch clock;
                const auto index = build_haq(curve);
                const double build_ms = clock.elapsed_ms();
                const auto a = length_query(index, q);
                j["length"] = a.length;
                j["fallback"] = a.fallback;
                j["level"] = a.level;
                j["candidates"] = a.candidates;
                j["levels"] = index.radii.size();
                j["build_ms"] = build_ms;
            }
            out << j.dump() << '\n';
            return static_cast<int>(kOk);
        });
    }
    if (*gen) {
        return guarded(err, [&] {
            const auto curve = generate(kind, gen_n, seed);
            out << "# kind=" << kind << " n=" << gen_n << " seed=" << seed << '\n';
            write_csv(out, curve);
            return static_cast<int>(kOk);
        });
    }
    return guarded(err, [&] {
        std::ifstream in(suite_path);
        if (!in) throw std::invalid_argument("cannot open suite " + suite_path);
        nlohmann::json suite;
        try {
            suite = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::invalid_argument(std::string("suite: ") + e.what());
        }
        if (!suite.is_object() || !suite.contains("cases") || !suite["cases"].is_array()) {
            throw std::invalid_argument("suite: expected {\"cases\": [...]}");
        }
        const auto base = std::filesystem::path(suite_path).parent_path();
        // Validate every case before running any.
        std::vector<std::pair<PolyCurve, AlgoParams>> jobs;
        std::vector<nlohmann::json> labels;
        for (const auto& c : suite["cases"]) {
            auto p = params_from_case(c);
            validate(p);
            nlohmann::json label = {{"algo", p.algo}};
            if (c.contains("curve")) {
                auto path = std::filesystem::path(c["curve"].get<std::string>());
                if (path.is_relative()) path = base / path;
                jobs.emplace_back(load_curve_file(path.string()), p);
                label["curve"] = c["curve"];
            } else {
                const auto k = c.at("kind").get<std::string>();
                const auto n = c.at("n").get<std::size_t>();
                const auto s = c.value("seed", std::uint64_t{0});
                jobs.emplace_back(generate(k, n, s), p);
                label["kind"] = k;
                label["n"] = n;
                label["seed"] = s;
            }
            labels.push_back(label);
        }
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            nlohmann::json line = labels[i];
            try {
                const auto r = run_algorithm(jobs[i].first, jobs[i].second);
                for (const auto& key : {"c_estimate", "certified_lo", "certified_hi", "counters", "wall_time_ms", "round_log"}) {
                    if (r.contains(key)) line[key] = r[key];
                }
            } catch (const PreconditionError& e) {
                line["error"] = e.what();
            } catch (const MpcMemoryFault& e) {
                line["error"] = e.what();
            }
            out << line.dump() << '\n';
        }
        return static_cast<int>(kOk);
    });
}

}  // namespace packedness::cli
