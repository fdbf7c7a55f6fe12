// Command-line front end.
//
//   soficdim validate <file>   right-resolving check
//   soficdim dim2 <file>       2D tower pipeline
//   soficdim dim3 <file>       3D tree pipeline
//   soficdim oracle <file>     brute-force sweep only
//   soficdim report <file>     pipeline + printed-value cross-check
//
// Exit codes: 0 ok, 1 validation violations, 2 parse error, 3 method
// inapplicable, 4 budget exceeded, 5 internal error.

#include "soficdim/accum.hpp"
#include "soficdim/dim2.hpp"
#include "soficdim/dim3.hpp"
#include "soficdim/errors.hpp"
#include "soficdim/family.hpp"
#include "soficdim/oracle.hpp"
#include "soficdim/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using nlohmann::ordered_json;

struct OutputOptions {
    std::string out_path;
    std::string format = "json";
    std::string csv_path;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--out", opts.out_path, "write the report to a file");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    cmd->add_option("--csv", opts.csv_path,
                    "also dump series/bounds/estimates as CSV");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw soficdim::ParseError(0, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const ordered_json& doc, const OutputOptions& opts) {
    const std::string body = opts.format == "text"
                                 ? soficdim::render_text(doc)
                                 : doc.dump(2) + "\n";
    if (opts.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(opts.out_path, std::ios::binary);
        out << body;
    }
    if (!opts.csv_path.empty()) {
        std::ofstream csv(opts.csv_path, std::ios::binary);
        csv << soficdim::render_csv(doc);
    }
}

bool graph_violations(const soficdim::LoadedFamily& loaded) {
    return loaded.from_graph &&
           !soficdim::validate_right_resolving(loaded.graph).empty();
}

void attach_trivial_case(ordered_json& doc, const soficdim::AdjacencyFamily& fam) {
    if (auto tc = soficdim::trivial_case_dimension(fam)) {
        ordered_json j;
        j["kind"] = tc->kind;
        j["dim"] = tc->dim;
        doc["trivial_case"] = j;
    }
}

std::string joined_args(int argc, char** argv) {
    std::string cmd;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) cmd += ' ';
        cmd += argv[i];
    }
    return cmd;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Hausdorff dimension of sofic self-affine sets"};
    app.require_subcommand(1);

    std::string file;
    OutputOptions out_opts;
    int threads = soficdim::thread_count_from_env();
    int K = 40, kmax = 40, D = -1, N_max = 10, cert_depth = -1;
    int max_string_len = 8;
    int oracle_N = -1;  // <0: per-dimension default
    long long budget = 20'000'000, oracle_budget = 20'000'000;
    long long search_budget = 2'000'000;
    bool strict_primitivity = false;
    std::string refs_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "graph or matrix family input")
            ->required();
        add_output_options(cmd, out_opts);
        cmd->add_option("--threads", threads,
                        "worker threads (default: SOFICDIM_THREADS or 1)");
    };
    auto add_pipeline = [&](CLI::App* cmd, bool three_d) {
        cmd->add_option("--K", K, "series truncation")->capture_default_str();
        cmd->add_option("--kmax", kmax, "companion bound depth")
            ->capture_default_str();
        cmd->add_option("--budget", budget, "enumeration work limit")
            ->capture_default_str();
        cmd->add_option("--oracle-N", oracle_N,
                        "brute-force sweep depth (0 disables)");
        cmd->add_option("--oracle-budget", oracle_budget,
                        "brute-force work limit")
            ->capture_default_str();
        cmd->add_flag("--strict-primitivity", strict_primitivity,
                      "fail instead of warn when the key sum is not primitive");
        if (three_d) {
            cmd->add_option("--D", D, "tree depth cap (default K + 2)");
            cmd->add_option("--N-max", N_max, "tree-sum estimator depth")
                ->capture_default_str();
            cmd->add_option("--cert-depth", cert_depth,
                            "column-sum certification depth (default min(D, 10))");
        } else {
            cmd->add_option("--max-string-len", max_string_len,
                            "rank-1 tail search depth")
                ->capture_default_str();
            cmd->add_option("--search-budget", search_budget,
                            "rank-1 search node limit")
                ->capture_default_str();
        }
    };

    auto* validate = app.add_subcommand(
        "validate", "parse and check the right-resolving property");
    auto* dim2 = app.add_subcommand("dim2", "2D tower pipeline");
    auto* dim3 = app.add_subcommand("dim3", "3D tree pipeline");
    auto* oracle = app.add_subcommand("oracle", "brute-force sweep only");
    auto* report = app.add_subcommand(
        "report", "full pipeline plus printed-value cross-check");

    add_common(validate);
    add_common(dim2);
    add_pipeline(dim2, false);
    add_common(dim3);
    add_pipeline(dim3, true);
    add_common(oracle);
    oracle->add_option("--oracle-N", oracle_N, "sweep depth");
    oracle->add_option("--oracle-budget", oracle_budget, "work limit")
        ->capture_default_str();
    add_common(report);
    add_pipeline(report, true);
    report->add_option("--max-string-len", max_string_len,
                       "rank-1 tail search depth (2D inputs)")
        ->capture_default_str();
    report->add_option("--search-budget", search_budget,
                       "rank-1 search node limit (2D inputs)")
        ->capture_default_str();
    report->add_option("--refs", refs_path,
                       "reference JSON (default: bundled reference_values.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const std::string command = joined_args(argc, argv);

    try {
        const std::string content = read_file(file);
        soficdim::LoadedFamily loaded = soficdim::load_family_file(file);
        const auto info =
            soficdim::describe_input(file, content, loaded.from_graph);
        ordered_json doc = soficdim::report_header(command, info, loaded);
        const int d = loaded.family.alphabet.dim;

        if (validate->parsed()) {
            doc["compiled"] = soficdim::serialize_matrix_family(loaded.family);
            emit(doc, out_opts);
            return graph_violations(loaded) ? 1 : 0;
        }

        if (graph_violations(loaded)) {
            doc["flags"].push_back(
                "validation-failed: the graph is not right-resolving; no "
                "dimension was computed");
            emit(doc, out_opts);
            return 1;
        }

        if (oracle->parsed()) {
            const int N = oracle_N > 0 ? oracle_N : (d == 2 ? 10 : 9);
            soficdim::EstimateSequence seq =
                d == 2 ? soficdim::brute_dim2_sweep(loaded.family, N,
                                                    oracle_budget, threads)
                       : soficdim::brute_dim3_sweep(loaded.family, N,
                                                    oracle_budget, threads);
            soficdim::add_oracle_section(doc, seq, std::nullopt);
            emit(doc, out_opts);
            return 0;
        }

        const bool want_refs = report->parsed();
        bool applicable = false;

        if ((dim2->parsed() || want_refs) && d == 2) {
            soficdim::Dim2Config cfg;
            cfg.K = K;
            cfg.kmax = kmax;
            cfg.max_string_len = max_string_len;
            cfg.budget = budget;
            cfg.search_budget = search_budget;
            cfg.oracle_N = oracle_N < 0 ? 10 : oracle_N;
            cfg.oracle_budget = oracle_budget;
            cfg.threads = threads;
            cfg.primitivity_strict = strict_primitivity;
            auto res = soficdim::dimension2d(loaded.family, cfg);
            soficdim::add_dim2_sections(doc, res);
            if (cfg.oracle_N > 0) {
                soficdim::add_oracle_section(doc, res.oracle, res.oracle_delta);
            }
            applicable = res.applicable;
        } else if ((dim3->parsed() || want_refs) && d == 3) {
            soficdim::Dim3Config cfg;
            cfg.K = K;
            cfg.D = D;
            cfg.kmax = kmax;
            cfg.N_max = N_max;
            cfg.cert_depth = cert_depth;
            cfg.budget = budget;
            cfg.oracle_N = oracle_N < 0 ? 9 : oracle_N;
            cfg.oracle_budget = oracle_budget;
            cfg.threads = threads;
            cfg.primitivity_strict = strict_primitivity;
            auto res = soficdim::dimension3d(loaded.family, cfg);
            soficdim::add_dim3_sections(doc, res);
            if (cfg.oracle_N > 0) {
                soficdim::add_oracle_section(doc, res.oracle, res.oracle_delta);
            }
            applicable = res.applicable;
        } else {
            throw soficdim::MethodError(
                "input is " + std::to_string(d) +
                "-dimensional; use the matching subcommand");
        }

        attach_trivial_case(doc, loaded.family);
        if (want_refs && applicable) {
            const std::string rp = refs_path.empty()
                                       ? soficdim::default_reference_path()
                                       : refs_path;
            if (auto ref = soficdim::lookup_reference(rp, info.stem)) {
                soficdim::add_reference_section(doc, *ref);
            }
        }
        emit(doc, out_opts);
        return applicable ? 0 : 3;
    } catch (const soficdim::ParseError& e) {
        std::cerr << "error: " << file << ": " << e.what() << "\n";
        return 2;
    } catch (const soficdim::BudgetError& e) {
        std::cerr << "error: budget exceeded: " << e.what() << "\n";
        return 4;
    } catch (const soficdim::MethodError& e) {
        std::cerr << "error: method not applicable: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 5;
    }
}
