#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "evd/matrix_io.hpp"
#include "evd/metrics.hpp"
#include "evd/ranges.hpp"
#include "evd/report_io.hpp"

namespace evd {

namespace {

struct GenSpec {
    std::size_t n_lo = 0;
    std::size_t n_hi = 0;  // inclusive; n may be a range "2..12"
    std::uint64_t seed = 0;
    std::size_t count = 1;
    double scale = 1.0;
};

GenSpec parse_gen(const std::string& spec) {
    GenSpec g;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("generator spec item \"" + item + "\" is not key=value");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        try {
            if (key == "n") {
                const auto dots = val.find("..");
                if (dots == std::string::npos) {
                    g.n_lo = g.n_hi = std::stoul(val);
                } else {
                    g.n_lo = std::stoul(val.substr(0, dots));
                    g.n_hi = std::stoul(val.substr(dots + 2));
                }
            } else if (key == "seed") {
                g.seed = std::stoull(val);
            } else if (key == "count") {
                g.count = std::stoul(val);
            } else if (key == "scale") {
                g.scale = std::stod(val);
            } else {
                throw ParseError("unknown generator key \"" + key + "\"");
            }
        } catch (const std::logic_error&) {
            throw ParseError("bad generator value \"" + val + "\" for " + key);
        }
    }
    if (g.n_lo == 0 || g.n_hi < g.n_lo)
        throw ParseError("generator spec needs n=<dim> or n=<lo>..<hi>");
    return g;
}

struct InputOpts {
    std::string path;
    bool matrix_market = false;
    std::string gen;

    bool any() const { return !path.empty() || !gen.empty(); }
};

void add_input_flags(CLI::App* cmd, InputOpts& in) {
    cmd->add_option("--input", in.path, "matrix file (header-less CSV)");
    cmd->add_flag("--mm", in.matrix_market, "treat --input as Matrix Market");
    cmd->add_option("--gen", in.gen,
                    "generate input: n=..[,seed=..][,count=..][,scale=..]");
}

SymMatrix load_input(const InputOpts& in) {
    if (!in.path.empty()) {
        const LoadedMatrix loaded = in.matrix_market ? load_matrix_market(in.path)
                                                     : load_csv(in.path);
        if (loaded.max_asymmetry > 1e-9)
            std::cerr << "warning: " << in.path << " asymmetric by "
                      << format_double(loaded.max_asymmetry)
                      << "; symmetrized on load\n";
        return loaded.matrix;
    }
    if (!in.gen.empty()) {
        const GenSpec g = parse_gen(in.gen);
        return random_spsd(g.n_lo, g.seed, g.scale);
    }
    throw ParseError("no input: give --input or --gen");
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + out_path);
    out << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---- evd -----------------------------------------------------------------

struct EvdCmd {
    InputOpts input;
    std::optional<int> sweeps;
    std::string fixed_format;
    bool strict = false;
    std::string out;
    std::string fmt = "table";
};

int run_evd(const EvdCmd& cmd) {
    const SymMatrix m = load_input(cmd.input);
    EvdOptions opts;
    opts.sweeps = cmd.sweeps;

    EvdResult res;
    if (cmd.fixed_format.empty()) {
        res = jacobi_evd(m, opts);
    } else {
        const FixedFormat fmt = FixedFormat::parse(cmd.fixed_format);
        res = jacobi_evd_fixed(m, fmt, opts, cmd.strict);
    }
    const PcaModel model = make_pca_model(res, m.dim());

    if (cmd.fmt == "json") {
        nlohmann::json j = {{"schema_version", kSchemaVersion},
                            {"command", "evd"},
                            {"eigenvalues", model.eigenvalues},
                            {"result", to_json(res)}};
        write_output(dump(j), cmd.out);
    } else if (cmd.fmt == "csv") {
        std::ostringstream os;
        os << "eigenvalue\n";
        for (double v : model.eigenvalues) os << format_double(v, 17) << '\n';
        write_output(os.str(), cmd.out);
    } else {
        std::ostringstream os;
        os << "eigenvalues (descending):";
        for (double v : model.eigenvalues) os << ' ' << format_double(v);
        os << "\noffdiag residual: " << format_double(res.offdiag_residual)
           << "\nsweeps: " << res.sweeps_run << "\neigenvectors (columns):\n";
        for (std::size_t i = 0; i < model.eigenvectors.rows(); ++i) {
            for (std::size_t j = 0; j < model.eigenvectors.cols(); ++j)
                os << (j ? " " : "  ") << format_double(model.eigenvectors(i, j));
            os << '\n';
        }
        if (!res.overflow_events.empty())
            os << "overflow events: " << res.overflow_events.size() << '\n'
               << overflow_csv(res.overflow_events);
        write_output(os.str(), cmd.out);
    }
    return 0;
}

// ---- compare / plot-data ranges ------------------------------------------

struct CompareCmd {
    InputOpts input;
    std::optional<int> sweeps;
    std::vector<std::string> methods;
    std::string box;  // "lo:hi" for matrix-free ia/aa runs
    std::size_t box_n = 0;
    std::string out;
    std::string fmt = "table";
};

Interval parse_box(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ParseError("box must be lo:hi, got \"" + spec + "\"");
    try {
        const double lo = std::stod(spec.substr(0, colon));
        const double hi = std::stod(spec.substr(colon + 1));
        if (!(lo <= hi)) throw ParseError("box lo exceeds hi");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw ParseError("box must be lo:hi, got \"" + spec + "\"");
    }
}

std::vector<RangeReport> compare_reports(const CompareCmd& cmd) {
    std::vector<std::string> methods = cmd.methods;
    if (methods.empty()) methods = {"sim", "ia", "aa", "unscaled", "scaled"};

    std::optional<SymMatrix> m;
    if (cmd.input.any()) m = load_input(cmd.input);

    auto need_matrix = [&](const std::string& method) -> const SymMatrix& {
        if (!m) throw ParseError("method " + method + " needs a matrix input");
        return *m;
    };
    auto box_and_n = [&]() -> std::pair<Interval, std::size_t> {
        if (!cmd.box.empty()) {
            const std::size_t n = cmd.box_n ? cmd.box_n : (m ? m->dim() : 0);
            if (n < 2) throw ParseError("--box needs --n at least 2");
            return {parse_box(cmd.box), n};
        }
        const SymMatrix& mm = need_matrix("ia/aa");
        return {{mm.min_entry(), mm.max_entry()}, mm.dim()};
    };

    std::vector<RangeReport> reports;
    for (const std::string& name : methods) {
        if (name == "sim") {
            reports.push_back(sim_range(need_matrix(name), cmd.sweeps));
        } else if (name == "ia") {
            const auto [box, n] = box_and_n();
            reports.push_back(ia_range(box, n, cmd.sweeps));
        } else if (name == "aa") {
            const auto [box, n] = box_and_n();
            reports.push_back(aa_range(box, n, cmd.sweeps));
        } else if (name == "unscaled") {
            reports.push_back(analytic_bounds_unscaled(need_matrix(name)));
        } else if (name == "scaled") {
            reports.push_back(analytic_bounds_scaled());
        } else {
            throw ParseError("unknown method \"" + name +
                             "\"; expected sim,ia,aa,unscaled,scaled");
        }
    }
    return reports;
}

int run_compare(const CompareCmd& cmd) {
    const std::vector<RangeReport> reports = compare_reports(cmd);
    if (cmd.fmt == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& rep : reports) arr.push_back(to_json(rep));
        write_output(dump({{"schema_version", kSchemaVersion},
                           {"command", "compare"},
                           {"reports", arr}}),
                     cmd.out);
    } else if (cmd.fmt == "csv") {
        write_output(ranges_csv(reports), cmd.out);
    } else {
        write_output(ranges_table(reports), cmd.out);
    }
    return 0;
}

// ---- fixed-sweep / plot-data accuracy ------------------------------------

struct SweepCmd {
    InputOpts input;
    std::optional<int> sweeps;
    std::vector<std::string> formats;
    bool strict = false;
    std::uint64_t seed = 1;
    std::string out;
    std::string fmt = "table";
};

struct SweepRow {
    FixedFormat format;
    double sqnr_db;
    std::vector<double> pc_mse;
    std::size_t overflow_count;
};

std::vector<SweepRow> fixed_sweep_rows(const SweepCmd& cmd) {
    if (cmd.formats.empty())
        throw ParseError("fixed-sweep needs at least one --formats entry");

    const SymMatrix m = load_input(cmd.input);
    const ScaleResult scaled = scale_matrix(m);
    const std::size_t n = m.dim();

    EvdOptions opts;
    opts.sweeps = cmd.sweeps;
    const EvdResult ref = jacobi_evd(scaled.scaled, opts);
    PcaModel ref_model = make_pca_model(ref, n, scaled.factor_m);

    // Seeded probe data stands in for the image the components would project;
    // both pipelines see the same draws.
    const Matrix probe = random_data(std::max<std::size_t>(8, 4 * n), n, cmd.seed);
    ref_model.means = column_means(probe);
    const Matrix ref_pcs = pca_project(probe, ref_model);

    std::vector<SweepRow> rows;
    for (const std::string& fspec : cmd.formats) {
        const FixedFormat fmt = FixedFormat::parse(fspec);
        const EvdResult fixed =
            jacobi_evd_fixed(scaled.scaled, fmt, opts, cmd.strict);
        PcaModel fx_model = make_pca_model(fixed, n, scaled.factor_m);
        fx_model.means = ref_model.means;
        const Matrix fx_pcs = pca_project(probe, fx_model);

        SweepRow row{fmt, sqnr(ref_model.eigenvalues, fx_model.eigenvalues), {},
                     fixed.overflow_events.size()};
        for (std::size_t c = 0; c < n; ++c) {
            double s = 0.0;
            for (std::size_t r = 0; r < probe.rows(); ++r) {
                const double d = ref_pcs(r, c) - fx_pcs(r, c);
                s += d * d;
            }
            row.pc_mse.push_back(s / double(probe.rows()));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string sqnr_text(double db) {
    return std::isinf(db) ? "exact" : format_double(db);
}

int run_fixed_sweep(const SweepCmd& cmd) {
    const std::vector<SweepRow> rows = fixed_sweep_rows(cmd);
    if (cmd.fmt == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json mse = nlohmann::json::array();
            for (double v : row.pc_mse) mse.push_back(json_real(v));
            arr.push_back({{"format", row.format.to_string()},
                           {"sqnr_db", std::isinf(row.sqnr_db)
                                           ? nlohmann::json("exact")
                                           : nlohmann::json(row.sqnr_db)},
                           {"pc_mse", mse},
                           {"overflow_events", row.overflow_count}});
        }
        write_output(dump({{"schema_version", kSchemaVersion},
                           {"command", "fixed-sweep"},
                           {"rows", arr}}),
                     cmd.out);
    } else if (cmd.fmt == "csv") {
        std::ostringstream os;
        os << "format,sqnr_db,max_pc_mse,overflow_events\n";
        for (const auto& row : rows) {
            const double worst =
                *std::max_element(row.pc_mse.begin(), row.pc_mse.end());
            os << row.format.to_string() << ',' << sqnr_text(row.sqnr_db) << ','
               << format_double(worst, 17) << ',' << row.overflow_count << '\n';
        }
        write_output(os.str(), cmd.out);
    } else {
        std::ostringstream os;
        os << "format   sqnr_db     max_pc_mse    overflows\n";
        for (const auto& row : rows) {
            const double worst =
                *std::max_element(row.pc_mse.begin(), row.pc_mse.end());
            os << row.format.to_string() << "     " << sqnr_text(row.sqnr_db)
               << "      " << format_double(worst) << "      "
               << row.overflow_count << '\n';
        }
        write_output(os.str(), cmd.out);
    }
    return 0;
}

// ---- corpus --------------------------------------------------------------

struct CorpusCmd {
    std::string gen;
    bool no_scale = false;
    std::string out;
    std::string fmt = "table";
};

int run_corpus(const CorpusCmd& cmd) {
    if (cmd.gen.empty()) throw ParseError("corpus needs --gen");
    const GenSpec g = parse_gen(cmd.gen);
    const RangeReport bounds = analytic_bounds_scaled();

    struct Row {
        std::size_t index;
        std::size_t n;
        std::uint64_t seed;
        std::vector<Violation> violations;
    };
    std::vector<Row> rows;
    std::size_t failures = 0;
    for (std::size_t k = 0; k < g.count; ++k) {
        const std::size_t n = g.n_lo + (g.n_hi > g.n_lo ? k % (g.n_hi - g.n_lo + 1) : 0);
        const std::uint64_t seed = g.seed + k;
        SymMatrix m = random_spsd(n, seed, g.scale);
        if (!cmd.no_scale) m = scale_matrix(m).scaled;
        Row row{k, n, seed, bound_compliance(sim_range(m), bounds)};
        if (!row.violations.empty()) ++failures;
        rows.push_back(std::move(row));
    }

    if (cmd.fmt == "json") {
        nlohmann::json fails = nlohmann::json::array();
        for (const auto& row : rows) {
            if (row.violations.empty()) continue;
            nlohmann::json vs = nlohmann::json::array();
            for (const auto& v : row.violations)
                vs.push_back({{"variable", std::string(var_name(v.variable))},
                              {"envelope", to_json(v.envelope)},
                              {"bound", to_json(v.bound)}});
            fails.push_back({{"index", row.index},
                             {"n", row.n},
                             {"seed", row.seed},
                             {"violations", vs}});
        }
        write_output(dump({{"schema_version", kSchemaVersion},
                           {"command", "corpus"},
                           {"count", g.count},
                           {"failures", failures},
                           {"details", fails}}),
                     cmd.out);
    } else if (cmd.fmt == "csv") {
        std::ostringstream os;
        os << "index,n,seed,violations\n";
        for (const auto& row : rows)
            os << row.index << ',' << row.n << ',' << row.seed << ','
               << row.violations.size() << '\n';
        write_output(os.str(), cmd.out);
    } else {
        std::ostringstream os;
        os << "matrices: " << g.count << "\nfailures: " << failures << '\n';
        for (const auto& row : rows)
            for (const auto& v : row.violations)
                os << "  #" << row.index << " n=" << row.n << " seed=" << row.seed
                   << " " << var_name(v.variable) << " ["
                   << format_double(v.envelope.lo) << ", "
                   << format_double(v.envelope.hi) << "] outside ["
                   << format_double(v.bound.lo) << ", "
                   << format_double(v.bound.hi) << "]\n";
        write_output(os.str(), cmd.out);
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Two-sided Jacobi EVD with range analysis and fixed-point evaluation"};
    app.require_subcommand(1);

    EvdCmd evd_cmd;
    CLI::App* evd_app = app.add_subcommand("evd", "eigendecomposition of one matrix");
    add_input_flags(evd_app, evd_cmd.input);
    int evd_sweeps = -1;
    evd_app->add_option("--sweeps", evd_sweeps, "sweep count (default: dimension)");
    evd_app->add_option("--fixed", evd_cmd.fixed_format,
                        "run in fixed point at this WL:IWL format");
    evd_app->add_flag("--strict-overflow", evd_cmd.strict,
                      "abort on the first overflow event");
    evd_app->add_option("--out", evd_cmd.out, "output path (default stdout)");
    evd_app->add_option("--fmt", evd_cmd.fmt, "json|csv|table")
        ->check(CLI::IsMember({"json", "csv", "table"}));

    CompareCmd cmp_cmd;
    CLI::App* cmp_app =
        app.add_subcommand("compare", "range reports from several back-ends");
    add_input_flags(cmp_app, cmp_cmd.input);
    int cmp_sweeps = -1;
    cmp_app->add_option("--sweeps", cmp_sweeps, "sweep count (default: dimension)");
    cmp_app->add_option("--methods", cmp_cmd.methods,
                        "subset of sim,ia,aa,unscaled,scaled")
        ->delimiter(',');
    cmp_app->add_option("--box", cmp_cmd.box, "input box lo:hi for ia/aa");
    cmp_app->add_option("--n", cmp_cmd.box_n, "dimension for --box runs");
    cmp_app->add_option("--out", cmp_cmd.out, "output path");
    cmp_app->add_option("--fmt", cmp_cmd.fmt, "json|csv|table")
        ->check(CLI::IsMember({"json", "csv", "table"}));

    SweepCmd sweep_cmd;
    CLI::App* sweep_app = app.add_subcommand(
        "fixed-sweep", "accuracy across fixed-point formats on scaled input");
    add_input_flags(sweep_app, sweep_cmd.input);
    int fs_sweeps = -1;
    sweep_app->add_option("--sweeps", fs_sweeps, "sweep count");
    sweep_app->add_option("--formats", sweep_cmd.formats, "WL:IWL list")
        ->delimiter(',');
    sweep_app->add_flag("--strict-overflow", sweep_cmd.strict,
                        "abort on the first overflow event");
    sweep_app->add_option("--seed", sweep_cmd.seed, "probe-data seed");
    sweep_app->add_option("--out", sweep_cmd.out, "output path");
    sweep_app->add_option("--fmt", sweep_cmd.fmt, "json|csv|table")
        ->check(CLI::IsMember({"json", "csv", "table"}));

    CorpusCmd corpus_cmd;
    CLI::App* corpus_app =
        app.add_subcommand("corpus", "batch soundness check on generated matrices");
    corpus_app->add_option("--gen", corpus_cmd.gen,
                           "n=..[,seed=..][,count=..][,scale=..]; n may be lo..hi");
    corpus_app->add_flag("--no-scale", corpus_cmd.no_scale,
                         "skip scaling (negative control)");
    corpus_app->add_option("--out", corpus_cmd.out, "output path");
    corpus_app->add_option("--fmt", corpus_cmd.fmt, "json|csv|table")
        ->check(CLI::IsMember({"json", "csv", "table"}));

    std::string plot_kind = "ranges";
    CompareCmd plot_cmp;
    SweepCmd plot_sweep;
    CLI::App* plot_app =
        app.add_subcommand("plot-data", "tidy CSV export for external plotting");
    plot_app->add_option("--kind", plot_kind, "ranges|accuracy")
        ->check(CLI::IsMember({"ranges", "accuracy"}));
    add_input_flags(plot_app, plot_cmp.input);
    int plot_sweeps = -1;
    plot_app->add_option("--sweeps", plot_sweeps, "sweep count");
    plot_app->add_option("--methods", plot_cmp.methods,
                         "subset of sim,ia,aa,unscaled,scaled")
        ->delimiter(',');
    plot_app->add_option("--box", plot_cmp.box, "input box lo:hi for ia/aa");
    plot_app->add_option("--n", plot_cmp.box_n, "dimension for --box runs");
    plot_app->add_option("--formats", plot_sweep.formats, "WL:IWL list")
        ->delimiter(',');
    plot_app->add_option("--seed", plot_sweep.seed, "probe-data seed");
    plot_app->add_option("--out", plot_cmp.out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*evd_app) {
            if (evd_sweeps > 0) evd_cmd.sweeps = evd_sweeps;
            return run_evd(evd_cmd);
        }
        if (*cmp_app) {
            if (cmp_sweeps > 0) cmp_cmd.sweeps = cmp_sweeps;
            return run_compare(cmp_cmd);
        }
        if (*sweep_app) {
            if (fs_sweeps > 0) sweep_cmd.sweeps = fs_sweeps;
            return run_fixed_sweep(sweep_cmd);
        }
        if (*corpus_app) return run_corpus(corpus_cmd);
        if (*plot_app) {
            if (plot_kind == "ranges") {
                if (plot_sweeps > 0) plot_cmp.sweeps = plot_sweeps;
                plot_cmp.fmt = "csv";
                return run_compare(plot_cmp);
            }
            plot_sweep.input = plot_cmp.input;
            if (plot_sweeps > 0) plot_sweep.sweeps = plot_sweeps;
            plot_sweep.out = plot_cmp.out;
            plot_sweep.fmt = "csv";
            return run_fixed_sweep(plot_sweep);
        }
        return 2;
    } catch (const OverflowAbort& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const NotSymmetric& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace evd
