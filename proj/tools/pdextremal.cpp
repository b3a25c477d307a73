// pdextremal <bounds|sweep|witness|solve|certify> [flags]
//
// Exit codes: 0 success, 1 a certification or search that must succeed failed,
// 2 parse or domain error, 3 unwritable output, 4 infeasible witness parameters,
// 5 LP infeasible or unbounded, 6 pivot limit reached.

#include "pdextremal/bounds.hpp"
#include "pdextremal/certify.hpp"
#include "pdextremal/errors.hpp"
#include "pdextremal/extremal.hpp"
#include "pdextremal/serialize.hpp"
#include "pdextremal/witness.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

using namespace pdextremal;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, unwritable = 3, infeasible_params = 4, lp_infeasible = 5, lp_limit = 6 };

struct UnwritableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string format = "json";
    std::string output;
    std::uint64_t seed = 0;
    bool serial = false;
    Execution exec() const { return serial ? Execution::serial : Execution::parallel; }
};

Rational rational_arg(const std::string& text, const char* name) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("--") + name + ": " + e.what());
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

// Output sink: stdout, or a file opened before any work is done.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file_.open(path);
        if (!file_) throw UnwritableError("cannot write to '" + path + "'");
    }
    std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    void finish() {
        out().flush();
        if (!out()) throw UnwritableError("write failed");
    }

private:
    std::ofstream file_;
};

bool looks_rational(const std::string& s) {
    static const std::regex re("-?[0-9]+/[0-9]+");
    return std::regex_match(s, re);
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows,
             bool summarize_arrays) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows, summarize_arrays);
        }
    } else if (j.is_array()) {
        if (summarize_arrays && j.size() > 40) {
            rows.emplace_back(prefix, "[" + std::to_string(j.size()) + " entries]");
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows, summarize_arrays);
    } else if (j.is_string()) {
        rows.emplace_back(prefix, j.get<std::string>());
    } else if (j.is_null()) {
        rows.emplace_back(prefix, "");
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

// Records without a dedicated schema: JSON as is, CSV as field,value pairs, tables
// with rationals shown as approximate decimals.
void emit(const json& j, const Options& opt, Sink& sink) {
    std::ostream& os = sink.out();
    if (opt.format == "json") {
        os << j.dump(2) << '\n';
    } else if (opt.format == "csv") {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(j, "", rows, false);
        os << "field,value\n";
        for (const auto& [k, v] : rows) os << csv_field(k) << ',' << csv_field(v) << '\n';
    } else {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(j, "", rows, true);
        std::size_t width = 0;
        for (const auto& row : rows) width = std::max(width, row.first.size());
        for (const auto& [k, v] : rows) {
            os << k << std::string(width - k.size() + 2, ' ');
            if (looks_rational(v)) {
                os << "~" << Rational::parse(v).decimal(20) << "  (approx; exact " << v << ")";
            } else {
                os << v;
            }
            os << '\n';
        }
    }
    sink.finish();
}

void emit_bounds(const std::vector<BoundReport>& reports, bool sweep, const Options& opt, Sink& sink) {
    std::ostream& os = sink.out();
    if (opt.format == "csv") {
        os << bound_csv_header(sweep) << '\n';
        for (const auto& r : reports) os << bound_csv_row(r, sweep) << '\n';
        sink.finish();
    } else if (opt.format == "json") {
        const json j = sweep ? json(reports) : json(reports.front());
        os << j.dump(2) << '\n';
        sink.finish();
    } else if (sweep) {
        os << "ell  lower_G  lower_C  upper(~)  upper_simple  integer_ell\n";
        for (const auto& r : reports) {
            os << r.ell << "  " << r.lower_G << "  " << r.lower_C << "  "
               << (r.upper ? r.upper->decimal(20) : std::string("-")) << "  "
               << (r.upper_simple ? std::to_string(*r.upper_simple) : std::string("-")) << "  "
               << (r.integer_ell ? "yes" : "no") << '\n';
        }
        os << "(upper shown as a 20-digit decimal approximation)\n";
        sink.finish();
    } else {
        emit(json(reports.front()), opt, sink);
    }
}

int lp_exit(LPStatus s) {
    switch (s) {
        case LPStatus::optimal: return ok;
        case LPStatus::infeasible:
        case LPStatus::unbounded: return lp_infeasible;
        case LPStatus::iteration_limit: return lp_limit;
    }
    return failed;
}

// Linear interpolation of (x, f(x)) samples, zero outside their range.
RealFn sampled_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::vector<std::pair<double, double>> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split(line, ',');
        if (cells.size() != 2) throw ParseError("samples need two columns: '" + line + "'");
        try {
            pts.emplace_back(std::stod(cells[0]), std::stod(cells[1]));
        } catch (const std::exception&) {
            if (pts.empty()) continue;  // header row
            throw ParseError("bad sample row '" + line + "'");
        }
    }
    if (pts.size() < 2) throw ParseError("need at least two samples");
    std::sort(pts.begin(), pts.end());
    return [pts](double x) {
        if (x < pts.front().first || x > pts.back().first) return 0.0;
        auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(x, -HUGE_VAL));
        if (it == pts.begin()) return it->second;
        const auto& [x1, y1] = *it;
        const auto& [x0, y0] = *(it - 1);
        return x1 == x0 ? y1 : y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    };
}

RealFn named_function(const std::string& name, std::string& description) {
    const auto parts = split(name, ':');
    description = name;
    if (parts[0] == "triangle" && parts.size() == 1) {
        const PiecewiseLinearFn t = pl_triangle(Rational(0));
        return [t](double x) { return t.eval(x); };
    }
    if (parts[0] == "gaussian" && parts.size() == 1) {
        return [](double x) { return std::exp(-M_PI * x * x); };
    }
    if (parts[0] == "cospow" && parts.size() == 3) {
        const CosPower f = cospow(rational_arg(parts[1], "p"), std::stol(parts[2]));
        return [f](double x) { return f(x); };
    }
    if (parts[0] == "indicator" && parts.size() == 3) {
        const PiecewiseLinearFn f = pl_indicator(rational_arg(parts[1], "lo"), rational_arg(parts[2], "hi"));
        return [f](double x) { return f.eval(x); };
    }
    if (parts[0] == "H" && parts.size() == 4) {
        const PiecewiseLinearFn f = build_H(rational_arg(parts[1], "a"), std::stoll(parts[2]), rational_arg(parts[3], "p"));
        return [f](double x) { return f.eval(x); };
    }
    throw ParseError("unknown function '" + name + "' (triangle, gaussian, cospow:p:n, indicator:lo:hi, H:a:k:p)");
}

std::vector<Rational> a_grid_arg(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ParseError("--a-grid expects lo:hi:count");
    const Rational lo = rational_arg(parts[0], "a-grid");
    const Rational hi = rational_arg(parts[1], "a-grid");
    const long count = std::stol(parts[2]);
    if (count < 1 || hi < lo) throw ParseError("--a-grid needs lo <= hi and count >= 1");
    if (count == 1) return {lo};
    std::vector<Rational> grid;
    for (long i = 0; i < count; ++i) grid.push_back(lo + (hi - lo) * Rational(i) / Rational(count - 1));
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounds, witnesses and certificates for window integrals of doubly positive functions"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    if (const char* env = std::getenv("PDEXTREMAL_SEED")) {
        try {
            opt.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: PDEXTREMAL_SEED must be a nonnegative integer\n";
            return usage;
        }
    }
    app.add_option("--format", opt.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--output,-o", opt.output, "write to a file instead of stdout");
    app.add_option("--seed", opt.seed, "random seed (default: PDEXTREMAL_SEED or 0)");
    app.add_flag("--serial", opt.serial, "run all kernels serially");

    std::string ell_s, from_s, to_s, step_s, eps_s, a_s, p_s, a_grid_s, cert_path, csv_path, fn_name, arithmetic_s = "automatic";
    long long k = 1;
    std::optional<long long> k_override;
    double tol = 1e-3, quad_tol = 1e-8, central_weight = 0.0;
    long n_cap = 1'000'000;
    bool paper_shifts = true;
    int shift_count = 16, dilation_count = 4;
    long max_pivots = 1'000'000;
    PrimalConfig primal_cfg;
    DoublyPositiveConfig dp_cfg;

    auto* bounds = app.add_subcommand("bounds", "closed-form bounds at one ell");
    bounds->add_option("--ell", ell_s, "ell (a/b or exact decimal)")->required();

    auto* sweep = app.add_subcommand("sweep", "bounds over an arithmetic range of ell (CSV by default)");
    sweep->add_option("--from", from_s)->required();
    sweep->add_option("--to", to_s)->required();
    sweep->add_option("--step", step_s)->required();

    auto* witness = app.add_subcommand("witness", "extremal witnesses and counterexamples");
    witness->require_subcommand(1);
    auto* lemma1 = witness->add_subcommand("lemma1", "concentrated cosine power near the right limit");
    lemma1->add_option("--k", k)->required();
    lemma1->add_option("--eps", eps_s)->required();
    lemma1->add_option("--tol", tol, "outside-mass tolerance");
    lemma1->add_option("--n-cap", n_cap);
    lemma1->add_option("--quad-tol", quad_tol);
    auto* lemma2 = witness->add_subcommand("lemma2", "exact majorization of the progression sum H");
    lemma2->add_option("--ell", ell_s)->required();
    lemma2->add_option("--a", a_s)->required();
    lemma2->add_option("--k", k_override, "override k (default [2 ell])");
    lemma2->add_option("--p", p_s, "override p");
    auto* bogachev = witness->add_subcommand("bogachev", "two-bump convolution square beating the central window");
    bogachev->add_option("--central-weight", central_weight);

    auto* solve = app.add_subcommand("solve", "dual LP bounds and primal estimates");
    solve->require_subcommand(1);
    auto add_lp_flags = [&](CLI::App* cmd) {
        cmd->add_option("--ell", ell_s)->required();
        cmd->add_flag("--paper-shifts,!--no-paper-shifts", paper_shifts, "include the progression shifts (default on)");
        cmd->add_option("--shifts", shift_count, "uniform h-atom shifts");
        cmd->add_option("--dilations", dilation_count, "dilated triangles");
        cmd->add_option("--arithmetic", arithmetic_s)->check(CLI::IsMember({"automatic", "rational", "floating"}));
        cmd->add_option("--max-pivots", max_pivots);
        cmd->add_option("--certificate", cert_path, "write a standalone majorization certificate");
    };
    auto* gamma = solve->add_subcommand("gamma", "symmetric window program");
    add_lp_flags(gamma);
    auto* sigma = solve->add_subcommand("sigma", "shifted window program");
    add_lp_flags(sigma);
    sigma->add_option("--a", a_s, "single window offset");
    sigma->add_option("--a-grid", a_grid_s, "lo:hi:count (default 0:2ell:17)");
    auto* primal = solve->add_subcommand("primal", "ascent over squared cosine sums");
    primal->add_option("--ell", ell_s)->required();
    primal->add_option("--harmonics", primal_cfg.harmonics);
    primal->add_option("--period", primal_cfg.period);
    primal->add_option("--iters", primal_cfg.iters);
    primal->add_option("--starts", primal_cfg.starts);

    auto* certify = app.add_subcommand("certify", "positive definiteness and nonnegativity checks");
    certify->add_option("name", fn_name, "triangle, gaussian, cospow:p:n, indicator:lo:hi or H:a:k:p");
    certify->add_option("--csv", csv_path, "two-column samples x,f(x)");
    certify->add_option("--step", dp_cfg.step, "Toeplitz lag spacing");
    certify->add_option("--lags", dp_cfg.lags);
    certify->add_option("--tol", dp_cfg.tol);
    certify->add_option("--lo", dp_cfg.lo, "nonnegativity window");
    certify->add_option("--hi", dp_cfg.hi);
    certify->add_option("--sample-step", dp_cfg.sample_step);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        SolverConfig solver;
        solver.per_a_paper_shifts = paper_shifts;
        solver.max_pivots = max_pivots;
        solver.arithmetic = arithmetic_s == "rational"   ? Arithmetic::rational
                            : arithmetic_s == "floating" ? Arithmetic::floating
                                                         : Arithmetic::automatic;

        if (*bounds) {
            const BoundReport r = bound_report(rational_arg(ell_s, "ell"));
            Sink sink(opt.output);
            emit_bounds({r}, false, opt, sink);
            return ok;
        }
        if (*sweep) {
            if (app.count("--format") == 0) opt.format = "csv";
            const auto rows = bound_sweep(rational_arg(from_s, "from"), rational_arg(to_s, "to"),
                                          rational_arg(step_s, "step"), opt.exec());
            Sink sink(opt.output);
            emit_bounds(rows, true, opt, sink);
            return ok;
        }
        if (*lemma1) {
            Sink sink(opt.output);
            Lemma1Options lo;
            lo.concentration_tol = tol;
            lo.n_cap = n_cap;
            lo.quadrature.rel_tol = quad_tol;
            const WitnessEvaluation w = evaluate_lemma1(k, rational_arg(eps_s, "eps"), lo, opt.exec());
            json j = w;
            j["target_g"] = right_limit(k);
            j["target_c"] = Rational(2 * k);
            emit(j, opt, sink);
            return w.certified_pd && w.certified_nonneg ? ok : failed;
        }
        if (*lemma2) {
            Sink sink(opt.output);
            const Rational ell = rational_arg(ell_s, "ell");
            ConstructionParams cp = construction_params(ell);
            if (k_override) cp.k = *k_override;
            if (!p_s.empty()) cp.p = rational_arg(p_s, "p");
            const MajorizationCertificate c = verify_majorization(rational_arg(a_s, "a"), cp.k, cp.p);
            json j = c;
            j["ell"] = ell;
            emit(j, opt, sink);
            return c.holds ? ok : failed;
        }
        if (*bogachev) {
            Sink sink(opt.output);
            BogachevGrid grid = BogachevGrid::defaults();
            grid.central_weight = Rational::from_double(central_weight);
            const CounterexampleReport r = bogachev_search(grid, opt.exec());
            emit(json(r), opt, sink);
            return r.found ? ok : failed;
        }
        if (*gamma || *sigma) {
            const Rational ell = rational_arg(ell_s, "ell");
            Sink sink(opt.output);
            std::optional<Sink> cert_sink;
            if (!cert_path.empty()) cert_sink.emplace(cert_path);
            const Rational reach = *gamma ? ell : Rational(2) * ell + ell;
            const AtomFamily atoms = make_atoms(reach, shift_count, dilation_count, paper_shifts);

            json j;
            std::vector<const LPResult*> results;
            LPResult single;
            SigmaSup sup;
            int code = ok;
            if (*gamma) {
                single = gamma_lp(ell, atoms, solver);
                results.push_back(&single);
                j = single;
                j["closed_form_upper"] = ell >= Rational(1) ? json(upper_bound(ell).upper) : json(nullptr);
                code = lp_exit(single.status);
            } else if (!a_s.empty()) {
                single = sigma_lp(rational_arg(a_s, "a"), ell, atoms, solver);
                results.push_back(&single);
                j = single;
                code = lp_exit(single.status);
            } else {
                const auto grid = a_grid_s.empty() ? default_a_grid(ell) : a_grid_arg(a_grid_s);
                sup = sigma_sup(ell, grid, atoms, solver, opt.exec());
                for (const auto& r : sup.per_a) {
                    results.push_back(&r);
                    if (code == ok) code = lp_exit(r.status);
                }
                if (opt.format == "json") {
                    j = sup;
                } else {
                    j = json::object();
                    j["bound"] = sup.bound;
                    j["all_optimal"] = sup.all_optimal;
                    json rows = json::array();
                    for (const auto& r : sup.per_a) {
                        rows.push_back(json{{"a", r.a ? json(*r.a) : json(nullptr)},
                                            {"status", to_string(r.status)},
                                            {"A_opt", r.A_opt},
                                            {"bound_sigma", r.bound_sigma},
                                            {"independent_check", r.independent_check}});
                    }
                    j["per_a"] = rows;
                }
            }
            if (*sigma) {
                const Rational half = ell / Rational(2);
                j["closed_form_upper_C"] = half >= Rational(1) ? json(upper_bound(half).upper) : json(nullptr);
            }
            if (*gamma) {
                PrimalConfig pc;
                pc.seed = opt.seed;
                pc.period = std::max(16.0, 4.0 * ell.to_double());
                j["primal_estimate"] = primal_search(ell, pc, opt.exec()).lower_estimate;
            }
            emit(j, opt, sink);
            if (cert_sink) {
                json certs = json::array();
                for (const LPResult* r : results) {
                    if (r->status == LPStatus::optimal) certs.push_back(lp_certificate(*r));
                }
                cert_sink->out() << (certs.size() == 1 ? certs[0] : certs).dump(2) << '\n';
                cert_sink->finish();
            }
            for (const LPResult* r : results) {
                if (r->status == LPStatus::optimal && !r->independent_check) return failed;
            }
            return code;
        }
        if (*primal) {
            Sink sink(opt.output);
            primal_cfg.seed = opt.seed;
            const PrimalResult r = primal_search(rational_arg(ell_s, "ell"), primal_cfg, opt.exec());
            json j = r;
            j["seed"] = opt.seed;
            emit(j, opt, sink);
            return ok;
        }
        if (*certify) {
            if (fn_name.empty() == csv_path.empty()) throw ParseError("certify needs exactly one of a function name or --csv");
            Sink sink(opt.output);
            std::string description = csv_path;
            const RealFn f = csv_path.empty() ? named_function(fn_name, description) : sampled_function(csv_path);
            json j{{"function", description}};
            bool passed = false;
            try {
                const DoublyPositiveResult r = doubly_positive_check(f, dp_cfg, opt.exec());
                j["positive_definite"] = r.pd;
                j["nonnegative"] = r.nonneg;
                passed = r.passed();
            } catch (const NotEvenError& e) {
                j["positive_definite"] = nullptr;
                j["error"] = e.what();
            }
            j["doubly_positive"] = passed;
            emit(j, opt, sink);
            return passed ? ok : failed;
        }
    } catch (const UnwritableError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return unwritable;
    } catch (const InfeasibleConcentrationError& e) {
        std::cerr << "error: infeasible parameters: " << e.what() << '\n';
        return infeasible_params;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failed;
    }
    return ok;
}
