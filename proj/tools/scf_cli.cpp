// scf: unit equations u1 + u2 = n over the orders Z[rho] of the simplest
// cubic fields. Subcommands cover the bounded solver, the exponent-bound
// calculators, the continued-fraction reduction sweep with replayable
// certificates, and the end-to-end pipeline.

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scf/io.hpp"
#include "scf/version.hpp"

using namespace scf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        out += buf;
    }
    return out;
}

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// Every output document embeds the manifest that produced it.
struct Manifest {
    std::string command;
    std::vector<std::string> argv;
    std::string started = iso_now();
    json inputs = json::object();
    json outputs = json::object();

    json finish() const {
        return json{{"command", command}, {"argv", argv},
                    {"version", kVersion}, {"started", started},
                    {"finished", iso_now()}, {"inputs", inputs},
                    {"outputs", outputs}};
    }
};

int emit_document(Manifest& manifest, const json& payload,
                  const std::string& out_path, const std::string& format_hint) {
    std::string body = format_hint == "csv" ? payload.get<std::string>()
                                            : payload.dump(2);
    if (!out_path.empty())
        manifest.outputs[out_path] = json{{"sha256", sha256_hex(body)}};
    std::string text;
    if (format_hint == "csv")
        text = "# manifest " + manifest.finish().dump() + "\n" + body;
    else
        text = json{{"manifest", manifest.finish()}, {"payload", payload}}.dump(2) +
               "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "cannot open " << out_path << "\n";
            return kExitUsage;
        }
        f << text;
    }
    std::cout << text;
    return kExitOk;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct CommonArgs {
    std::int64_t a = 0;
    std::optional<std::int64_t> n_max;
    std::int64_t x_max = 30;
    long from = 101, to = 0;
    int jobs = 0;
    std::string out;
    std::string format = "json";
    long precision_cap = kPrecisionCap;
    bool quick = false;
};

int cmd_solve(Manifest& m, const CommonArgs& args, bool include_trivial) {
    CubicParams p{args.a};
    mpz_class n_max = args.n_max ? mpz_class(*args.n_max) : theorem_n_max(p);
    SearchResult r =
        solve_bounded(SearchConfig{p, n_max, args.x_max, include_trivial});
    if (args.format == "csv")
        return emit_document(m, json(classes_to_csv(r.sporadic)), args.out, "csv");
    return emit_document(m, search_result_to_json(r), args.out, "json");
}

int cmd_bounds(Manifest& m, const CommonArgs& args, bool absolute) {
    json payload = bounds_report_to_json(bounds_report(CubicParams{args.a}));
    if (absolute)
        payload["absolute_parameter_bound"] = mpz_to_json(absolute_parameter_bound());
    return emit_document(m, payload, args.out, "json");
}

int cmd_orbit(Manifest& m, const CommonArgs& args, const std::vector<int>& u1,
              const std::vector<int>& u2, std::int64_t n) {
    CubicParams p{args.a};
    SolutionTriple t = SolutionTriple::from_exponents(
        p, UnitRepr{u1[0], u1[1], u1[2]}, UnitRepr{u2[0], u2[1], u2[2]},
        mpz_class(n));
    json members = json::array();
    for (const SolutionTriple& s : orbit(t)) members.push_back(triple_to_json(s));
    TrivialCheck tc = is_trivial(t);
    json payload{{"input", triple_to_json(t)},
                 {"orbit", members},
                 {"orbit_size", members.size()},
                 {"canonical", triple_to_json(canonicalize(t))},
                 {"trivial", tc.trivial},
                 {"family", tc.trivial ? json(tc.family) : json(nullptr)}};
    return emit_document(m, payload, args.out, "json");
}

int cmd_table(Manifest& m, const CommonArgs& args) {
    try {
        TableReport rep = reproduce_table(args.jobs, args.x_max);
        return emit_document(m, table_report_to_json(rep), args.out, "json");
    } catch (const FixtureMismatch& e) {
        std::cerr << "table reproduction failed: " << e.what() << "\n";
        return kExitVerification;
    }
}

int cmd_scan(Manifest& m, const CommonArgs& args, long a_max) {
    ScanReport rep = conjecture_scan(a_max, args.n_max.value_or(400),
                                     args.x_max, args.jobs);
    return emit_document(m, scan_report_to_json(rep), args.out, "json");
}

// Writes certificates as JSONL: a manifest line, then one certificate
// object per parameter in increasing order. With --resume an existing
// sink is scanned for the last completed parameter and extended.
int cmd_sweep(Manifest& m, CommonArgs& args, bool resume) {
    if (!(args.from > 100) || args.from > args.to)
        throw std::invalid_argument("sweep range must satisfy 100 < from <= to");
    long from = args.from;
    std::ios_base::openmode mode = std::ios_base::out;
    if (resume && !args.out.empty()) {
        std::ifstream existing(args.out);
        std::string line, last;
        while (std::getline(existing, line))
            if (!line.empty() && line.find("\"q\"") != std::string::npos)
                last = line;
        if (!last.empty()) {
            from = std::max(from,
                            mpz_from_json(json::parse(last).at("a")).get_si() + 1);
            mode = std::ios_base::app;
        }
    }
    std::ofstream sink_file;
    std::ostream* sink_stream = &std::cout;
    if (!args.out.empty()) {
        sink_file.open(args.out, mode);
        if (!sink_file) {
            std::cerr << "cannot open " << args.out << "\n";
            return kExitUsage;
        }
        sink_stream = &sink_file;
    }
    if (mode == std::ios_base::out)
        *sink_stream << json{{"manifest", m.finish()}}.dump() << "\n";
    if (from > args.to) {
        std::cerr << "nothing to do (resume point beyond range)\n";
        return kExitOk;
    }
    SweepSummary s =
        sweep(from, args.to, args.jobs,
              [&](const ReductionCertificate& c) {
                  *sink_stream << certificate_to_json(c).dump() << "\n";
              },
              static_cast<mpfr_prec_t>(args.precision_cap));
    std::cerr << "sweep " << from << ".." << args.to << ": " << s.total
              << " parameters, " << s.contradictions << " contradictions, "
              << s.failures << " failures\n";
    return (s.failures == 0 && s.contradictions == s.total) ? kExitOk
                                                            : kExitVerification;
}

int cmd_verify_certs(Manifest& m, const std::string& path, int jobs) {
    std::string data = read_file(path);
    m.inputs[path] = json{{"sha256", sha256_hex(data)}};
    std::istringstream in(data);
    std::string line;
    std::vector<ReductionCertificate> certs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (j.contains("manifest")) continue;
        certs.push_back(certificate_from_json(j));
    }
    std::atomic<long> bad{0};
    std::mutex out_mutex;
    parallel_for(0, static_cast<long>(certs.size()), jobs, [&](long i) {
        std::vector<std::string> errors = verify_certificate(certs[i]);
        if (!errors.empty()) {
            bad++;
            std::lock_guard<std::mutex> lk(out_mutex);
            for (const std::string& e : errors)
                std::cerr << "a=" << certs[i].a << ": " << e << "\n";
        }
    });
    std::cerr << "verified " << certs.size() << " certificates, " << bad.load()
              << " failures\n";
    return bad.load() == 0 ? kExitOk : kExitVerification;
}

int cmd_theorem(Manifest& m, CommonArgs& args) {
    json payload;
    std::string stage = "reproduce_table";
    try {
        TableReport rep = reproduce_table(args.jobs, 30);
        payload["table"] = table_report_to_json(rep);

        stage = "absolute_parameter_bound";
        mpz_class bound = absolute_parameter_bound();
        payload["absolute_parameter_bound"] = mpz_to_json(bound);

        stage = "sweep";
        long to = bound.get_si();
        SweepSummary total{};
        std::ofstream sink_file;
        bool have_sink = !args.out.empty();
        if (have_sink) sink_file.open(args.out);
        auto sink = [&](const ReductionCertificate& c) {
            if (have_sink) sink_file << certificate_to_json(c).dump() << "\n";
        };
        if (args.quick) {
            for (long a = 101; a <= to; a += 100) {
                SweepSummary s = sweep(a, a, args.jobs, sink);
                total.total += s.total;
                total.contradictions += s.contradictions;
                total.failures += s.failures;
            }
        } else {
            total = sweep(101, to, args.jobs, sink);
        }
        if (total.failures != 0 || total.contradictions != total.total)
            throw CertificationFailed("sweep left parameters unresolved");
        payload["sweep"] = json{{"from", 101},
                                {"to", to},
                                {"parameters", total.total},
                                {"contradictions", total.contradictions},
                                {"failures", total.failures},
                                {"exhaustive", !args.quick}};
        payload["verdict"] =
            std::string("theorem verified at certificate level") +
            (args.quick ? " (quick mode: subsampled sweep, non-exhaustive)" : "");
        return emit_document(m, payload, "", "json");
    } catch (const std::exception& e) {
        std::cerr << "theorem pipeline failed at stage " << stage << ": "
                  << e.what() << "\n";
        return kExitVerification;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unit equations over simplest cubic fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonArgs args;
    Manifest manifest;
    for (int i = 0; i < argc; ++i) manifest.argv.emplace_back(argv[i]);

    auto add_common = [&](CLI::App* cmd, bool with_a) {
        if (with_a)
            cmd->add_option("--a", args.a, "family parameter (>= -1)")
                ->required()
                ->check(CLI::Range(std::int64_t(-1),
                                   std::numeric_limits<std::int64_t>::max()));
        cmd->add_option("--jobs", args.jobs, "worker threads (0 = all cores)");
        cmd->add_option("--out", args.out, "write the report to this file");
    };

    std::int64_t n_max_opt = -1;
    bool include_trivial = false;
    CLI::App* solve = app.add_subcommand("solve", "bounded exhaustive solver");
    add_common(solve, true);
    solve->add_option("--n-max", n_max_opt,
                      "largest n (default max(|a|^(1/3),1))");
    solve->add_option("--x-max", args.x_max, "exponent box radius")
        ->capture_default_str();
    solve->add_flag("--include-trivial", include_trivial,
                    "report trivial families too");
    solve->add_option("--format", args.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* table = app.add_subcommand(
        "table", "reproduce the sporadic table over -1 <= a <= 100");
    add_common(table, false);
    table->add_option("--x-max", args.x_max, "exponent box radius")
        ->capture_default_str();

    long a_max = 400;
    CLI::App* scan = app.add_subcommand(
        "conjecture-scan",
        "bounded scan for sporadic classes (complete only within the box)");
    add_common(scan, false);
    scan->add_option("--a-max", a_max, "largest parameter")->capture_default_str();
    scan->add_option("--n-max", n_max_opt, "largest n (default 400)");
    scan->add_option("--x-max", args.x_max, "exponent box radius");

    bool absolute = false;
    CLI::App* bounds =
        app.add_subcommand("bounds", "exponent bound report for one parameter");
    add_common(bounds, true);
    bounds->add_flag("--absolute", absolute,
                     "also compute the absolute parameter bound");

    std::vector<int> u1_repr, u2_repr;
    std::int64_t orbit_n = 0;
    CLI::App* orbit_cmd =
        app.add_subcommand("orbit", "equivalence orbit of one solution");
    add_common(orbit_cmd, true);
    orbit_cmd->add_option("--u1", u1_repr, "sign, x, y of u1")
        ->expected(3)
        ->required();
    orbit_cmd->add_option("--u2", u2_repr, "sign, x, y of u2")
        ->expected(3)
        ->required();
    orbit_cmd->add_option("--n", orbit_n, "right-hand side n")->required();

    bool resume = false;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "continued-fraction reduction certificates for a parameter range");
    add_common(sweep_cmd, false);
    sweep_cmd->add_option("--from", args.from, "first parameter (> 100)")
        ->required();
    sweep_cmd->add_option("--to", args.to, "last parameter")->required();
    sweep_cmd->add_option("--precision-cap", args.precision_cap,
                          "binary digits ceiling for the precision ladder");
    sweep_cmd->add_flag("--resume", resume,
                        "append after the last completed parameter");

    std::string certs_path;
    CLI::App* verify =
        app.add_subcommand("verify-certs", "replay a certificate file");
    verify->add_option("file", certs_path, "JSONL certificate file")->required();
    verify->add_option("--jobs", args.jobs, "worker threads");

    CLI::App* theorem = app.add_subcommand(
        "theorem", "full pipeline: table, absolute bound, reduction sweep");
    add_common(theorem, false);
    theorem->add_flag("--quick", args.quick,
                      "subsample the sweep (every 100th parameter)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (n_max_opt >= 0) args.n_max = n_max_opt;
    manifest.command = app.get_subcommands().front()->get_name();

    try {
        if (solve->parsed()) return cmd_solve(manifest, args, include_trivial);
        if (table->parsed()) return cmd_table(manifest, args);
        if (scan->parsed()) return cmd_scan(manifest, args, a_max);
        if (bounds->parsed()) return cmd_bounds(manifest, args, absolute);
        if (orbit_cmd->parsed())
            return cmd_orbit(manifest, args, u1_repr, u2_repr, orbit_n);
        if (sweep_cmd->parsed()) return cmd_sweep(manifest, args, resume);
        if (verify->parsed())
            return cmd_verify_certs(manifest, certs_path, args.jobs);
        if (theorem->parsed()) return cmd_theorem(manifest, args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitUsage;
}
