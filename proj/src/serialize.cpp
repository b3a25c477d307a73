#include "pdextremal/serialize.hpp"

#include "pdextremal/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace pdextremal {

namespace {

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
    j[key] = v ? json(*v) : json(nullptr);
}

template <class T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
    if (!j.contains(key) || j.at(key).is_null()) {
        v.reset();
    } else {
        v = j.at(key).get<T>();
    }
}

Side side_from_string(const std::string& s) {
    if (s == "left") return Side::left;
    if (s == "point") return Side::point;
    if (s == "right") return Side::right;
    throw ParseError("unknown side '" + s + "'");
}

// Doubles that may be infinite travel as strings.
json real(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double real_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ParseError("expected a number, got '" + s + "'");
}

}  // namespace

void to_json(json& j, const Rational& r) { j = r.str(); }

void from_json(const json& j, Rational& r) {
    if (j.is_string()) {
        r = Rational::parse(j.get<std::string>());
    } else if (j.is_number_integer()) {
        r = Rational(j.get<long long>());
    } else {
        throw ParseError("rationals are encoded as strings");
    }
}

void to_json(json& j, const Knot& k) {
    j = json{{"x", k.x}, {"left", k.left}, {"value", k.value}, {"right", k.right}};
}

void from_json(const json& j, Knot& k) {
    k.x = j.at("x").get<Rational>();
    k.left = j.at("left").get<Rational>();
    k.value = j.at("value").get<Rational>();
    k.right = j.at("right").get<Rational>();
}

void to_json(json& j, const PiecewiseLinearFn& f) {
    j = json::array();
    for (const Knot& k : f.knots()) j.push_back(k);
}

void from_json(const json& j, PiecewiseLinearFn& f) {
    f = PiecewiseLinearFn::from_knots(j.get<std::vector<Knot>>());
}

void to_json(json& j, const LeWitness& w) { j = json{{"x", w.x}, {"side", to_string(w.side)}}; }

void from_json(const json& j, LeWitness& w) {
    w.x = j.at("x").get<Rational>();
    w.side = side_from_string(j.at("side").get<std::string>());
}

void to_json(json& j, const BoundReport& r) {
    j = json{{"ell", r.ell}, {"lower_G", r.lower_G}, {"lower_C", r.lower_C}};
    put_optional(j, "upper", r.upper);
    put_optional(j, "upper_simple", r.upper_simple);
    put_optional(j, "k", r.k_opt);
    put_optional(j, "p", r.p_opt);
    put_optional(j, "exact_value", r.exact_value);
    j["phi_tie"] = r.phi_tie;
    j["integer_ell"] = r.integer_ell;
}

void from_json(const json& j, BoundReport& r) {
    r.ell = j.at("ell").get<Rational>();
    r.lower_G = j.at("lower_G").get<Rational>();
    r.lower_C = j.at("lower_C").get<Rational>();
    get_optional(j, "upper", r.upper);
    get_optional(j, "upper_simple", r.upper_simple);
    get_optional(j, "k", r.k_opt);
    get_optional(j, "p", r.p_opt);
    get_optional(j, "exact_value", r.exact_value);
    r.phi_tie = j.at("phi_tie").get<bool>();
    r.integer_ell = j.at("integer_ell").get<bool>();
}

void to_json(json& j, const PDCertificate& c) {
    j = json{{"method", to_string(c.method)},
             {"grid_step", c.grid_step},
             {"lag_count", c.lag_count},
             {"min_eigenvalue", c.min_eigenvalue},
             {"max_eigenvalue", c.max_eigenvalue},
             {"min_eigenvalue_ratio", c.min_eigenvalue_ratio},
             {"passed", c.passed},
             {"tolerance", c.tolerance},
             {"reason", c.reason}};
}

void from_json(const json& j, PDCertificate& c) {
    c.method = pd_method_from_string(j.at("method").get<std::string>());
    c.grid_step = j.at("grid_step").get<double>();
    c.lag_count = j.at("lag_count").get<int>();
    c.min_eigenvalue = j.at("min_eigenvalue").get<double>();
    c.max_eigenvalue = j.at("max_eigenvalue").get<double>();
    c.min_eigenvalue_ratio = j.at("min_eigenvalue_ratio").get<double>();
    c.passed = j.at("passed").get<bool>();
    c.tolerance = j.at("tolerance").get<double>();
    c.reason = j.at("reason").get<std::string>();
}

void to_json(json& j, const NonnegResult& r) {
    j = json{{"passed", r.passed}, {"worst_x", r.worst_x}, {"worst_value", r.worst_value}};
}

void from_json(const json& j, NonnegResult& r) {
    r.passed = j.at("passed").get<bool>();
    r.worst_x = j.at("worst_x").get<double>();
    r.worst_value = j.at("worst_value").get<double>();
}

void to_json(json& j, const Lemma1Params& p) {
    j = json{{"k", p.k}, {"eps", p.eps}, {"p", p.p}, {"delta", p.delta}, {"n", p.n}, {"outside_mass", p.outside_mass}};
}

void from_json(const json& j, Lemma1Params& p) {
    p.k = j.at("k").get<long long>();
    p.eps = j.at("eps").get<Rational>();
    p.p = j.at("p").get<Rational>();
    p.delta = j.at("delta").get<Rational>();
    p.n = j.at("n").get<long>();
    p.outside_mass = j.at("outside_mass").get<double>();
}

void to_json(json& j, const WitnessEvaluation& w) {
    j = json{{"description", w.description},
             {"g_ratio", w.g_ratio},
             {"c_ratio", w.c_ratio},
             {"c_ratio_argmax", w.c_ratio_argmax},
             {"certified_pd", w.certified_pd},
             {"certified_nonneg", w.certified_nonneg},
             {"quadrature_converged", w.quadrature_converged},
             {"certificates", w.certificates}};
    put_optional(j, "params", w.params);
}

void from_json(const json& j, WitnessEvaluation& w) {
    w.description = j.at("description").get<std::string>();
    w.g_ratio = j.at("g_ratio").get<double>();
    w.c_ratio = j.at("c_ratio").get<double>();
    w.c_ratio_argmax = j.at("c_ratio_argmax").get<double>();
    w.certified_pd = j.at("certified_pd").get<bool>();
    w.certified_nonneg = j.at("certified_nonneg").get<bool>();
    w.quadrature_converged = j.at("quadrature_converged").get<bool>();
    w.certificates = j.at("certificates").get<std::vector<PDCertificate>>();
    get_optional(j, "params", w.params);
}

void to_json(json& j, const MajorizationCertificate& c) {
    j = json{{"a", c.a},           {"k", c.k},       {"p", c.p},
             {"holds", c.holds},   {"lhs", c.lhs},   {"rhs", c.rhs},
             {"window_lo", c.window_lo}, {"window_hi", c.window_hi}};
    put_optional(j, "violation", c.violation);
}

void from_json(const json& j, MajorizationCertificate& c) {
    c.a = j.at("a").get<Rational>();
    c.k = j.at("k").get<long long>();
    c.p = j.at("p").get<Rational>();
    c.holds = j.at("holds").get<bool>();
    c.lhs = j.at("lhs").get<PiecewiseLinearFn>();
    c.rhs = j.at("rhs").get<PiecewiseLinearFn>();
    c.window_lo = j.at("window_lo").get<Rational>();
    c.window_hi = j.at("window_hi").get<Rational>();
    get_optional(j, "violation", c.violation);
}

void to_json(json& j, const CounterexampleReport& r) {
    j = json{{"found", r.found},
             {"c", r.c},
             {"w", r.w},
             {"a", r.a},
             {"window_halfwidth", r.window_halfwidth},
             {"central_weight", r.central_weight},
             {"window_integral", r.window_integral},
             {"central_integral", r.central_integral},
             {"gap", r.gap},
             {"f", r.f},
             {"candidates", r.candidates}};
}

void from_json(const json& j, CounterexampleReport& r) {
    r.found = j.at("found").get<bool>();
    r.c = j.at("c").get<Rational>();
    r.w = j.at("w").get<Rational>();
    r.a = j.at("a").get<Rational>();
    r.window_halfwidth = j.at("window_halfwidth").get<Rational>();
    r.central_weight = j.at("central_weight").get<Rational>();
    r.window_integral = j.at("window_integral").get<Rational>();
    r.central_integral = j.at("central_integral").get<Rational>();
    r.gap = j.at("gap").get<Rational>();
    r.f = j.at("f").get<PiecewiseLinearFn>();
    r.candidates = j.at("candidates").get<long>();
}

void to_json(json& j, const Window& w) { j = json{{"lo", w.lo}, {"hi", w.hi}}; }

void from_json(const json& j, Window& w) {
    w.lo = j.at("lo").get<Rational>();
    w.hi = j.at("hi").get<Rational>();
}

void to_json(json& j, const LPResult& r) {
    std::vector<std::string> kinds;
    for (AtomKind k : r.atom_kinds) kinds.emplace_back(to_string(k));
    j = json{{"status", to_string(r.status)},
             {"arithmetic", to_string(r.arithmetic)},
             {"ell", r.ell},
             {"windows", r.windows},
             {"A_opt", r.A_opt},
             {"bound_sigma", r.bound_sigma},
             {"atom_kinds", kinds},
             {"atom_parameters", r.atom_parameters},
             {"lambda", r.lambda},
             {"reconstructed_H", r.reconstructed_H},
             {"independent_check", r.independent_check},
             {"constraints", r.constraints},
             {"variables", r.variables},
             {"pivots", r.pivots}};
    put_optional(j, "a", r.a);
    put_optional(j, "warm_start_A", r.warm_start_A);
}

void from_json(const json& j, LPResult& r) {
    r.status = lp_status_from_string(j.at("status").get<std::string>());
    const std::string arithmetic = j.at("arithmetic").get<std::string>();
    if (arithmetic == "rational") {
        r.arithmetic = Arithmetic::rational;
    } else if (arithmetic == "floating") {
        r.arithmetic = Arithmetic::floating;
    } else if (arithmetic == "automatic") {
        r.arithmetic = Arithmetic::automatic;
    } else {
        throw ParseError("unknown arithmetic '" + arithmetic + "'");
    }
    r.ell = j.at("ell").get<Rational>();
    r.windows = j.at("windows").get<std::vector<Window>>();
    r.A_opt = j.at("A_opt").get<Rational>();
    r.bound_sigma = j.at("bound_sigma").get<Rational>();
    r.atom_kinds.clear();
    for (const auto& k : j.at("atom_kinds")) r.atom_kinds.push_back(atom_kind_from_string(k.get<std::string>()));
    r.atom_parameters = j.at("atom_parameters").get<std::vector<Rational>>();
    r.lambda = j.at("lambda").get<std::vector<Rational>>();
    r.reconstructed_H = j.at("reconstructed_H").get<PiecewiseLinearFn>();
    r.independent_check = j.at("independent_check").get<bool>();
    r.constraints = j.at("constraints").get<long>();
    r.variables = j.at("variables").get<long>();
    r.pivots = j.at("pivots").get<long>();
    get_optional(j, "a", r.a);
    get_optional(j, "warm_start_A", r.warm_start_A);
}

void to_json(json& j, const SigmaSup& s) {
    j = json{{"bound", real(s.bound)}, {"all_optimal", s.all_optimal}, {"per_a", s.per_a}};
}

void from_json(const json& j, SigmaSup& s) {
    s.bound = real_from(j.at("bound"));
    s.all_optimal = j.at("all_optimal").get<bool>();
    s.per_a = j.at("per_a").get<std::vector<LPResult>>();
}

void to_json(json& j, const PrimalResult& r) {
    j = json{{"lower_estimate", r.lower_estimate},
             {"quadrature_ratio", r.quadrature_ratio},
             {"coefficients", r.coefficients},
             {"period", r.period},
             {"best_start", r.best_start},
             {"per_start", r.per_start}};
}

void from_json(const json& j, PrimalResult& r) {
    r.lower_estimate = j.at("lower_estimate").get<double>();
    r.quadrature_ratio = j.at("quadrature_ratio").get<double>();
    r.coefficients = j.at("coefficients").get<std::vector<double>>();
    r.period = j.at("period").get<double>();
    r.best_start = j.at("best_start").get<int>();
    r.per_start = j.at("per_start").get<std::vector<double>>();
}

bool same_record(const LPResult& x, const LPResult& y) {
    return x.status == y.status && x.arithmetic == y.arithmetic && x.ell == y.ell && x.a == y.a &&
           x.windows == y.windows && x.A_opt == y.A_opt && x.bound_sigma == y.bound_sigma &&
           x.atom_kinds == y.atom_kinds && x.atom_parameters == y.atom_parameters && x.lambda == y.lambda &&
           x.reconstructed_H == y.reconstructed_H && x.independent_check == y.independent_check &&
           x.warm_start_A == y.warm_start_A && x.constraints == y.constraints && x.variables == y.variables &&
           x.pivots == y.pivots;
}

namespace {

bool same_params(const std::optional<Lemma1Params>& x, const std::optional<Lemma1Params>& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->k == y->k && x->eps == y->eps && x->p == y->p && x->delta == y->delta && x->n == y->n &&
           x->outside_mass == y->outside_mass;
}

}  // namespace

bool same_record(const WitnessEvaluation& x, const WitnessEvaluation& y) {
    return x.description == y.description && x.g_ratio == y.g_ratio && x.c_ratio == y.c_ratio &&
           x.c_ratio_argmax == y.c_ratio_argmax && x.certified_pd == y.certified_pd &&
           x.certified_nonneg == y.certified_nonneg && x.quadrature_converged == y.quadrature_converged &&
           same_params(x.params, y.params) && x.certificates == y.certificates;
}

bool same_record(const CounterexampleReport& x, const CounterexampleReport& y) {
    return x.found == y.found && x.c == y.c && x.w == y.w && x.a == y.a && x.window_halfwidth == y.window_halfwidth &&
           x.central_weight == y.central_weight && x.window_integral == y.window_integral &&
           x.central_integral == y.central_integral && x.gap == y.gap && x.f == y.f && x.candidates == y.candidates;
}

bool same_record(const PrimalResult& x, const PrimalResult& y) {
    return x.lower_estimate == y.lower_estimate && x.quadrature_ratio == y.quadrature_ratio &&
           x.coefficients == y.coefficients && x.period == y.period && x.best_start == y.best_start &&
           x.per_start == y.per_start;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string bound_csv_header(bool with_integer_flag) {
    std::string h = "ell,lower_G,lower_C,upper,upper_simple,k,p,exact_value";
    if (with_integer_flag) h += ",integer_ell";
    return h;
}

std::string bound_csv_row(const BoundReport& r, bool with_integer_flag) {
    auto opt = [](const auto& v) -> std::string {
        if (!v) return "";
        std::ostringstream os;
        os << *v;
        return os.str();
    };
    std::string row = csv_field(r.ell.str()) + ',' + csv_field(r.lower_G.str()) + ',' + csv_field(r.lower_C.str()) +
                      ',' + csv_field(opt(r.upper)) + ',' + opt(r.upper_simple) + ',' + opt(r.k_opt) + ',' +
                      csv_field(opt(r.p_opt)) + ',' + csv_field(opt(r.exact_value));
    if (with_integer_flag) row += r.integer_ell ? ",true" : ",false";
    return row;
}

json lp_certificate(const LPResult& r) {
    if (r.status != LPStatus::optimal) throw DomainError("only optimal LP results carry a certificate");
    json atoms = json::array();
    for (std::size_t i = 0; i < r.lambda.size(); ++i) {
        if (r.lambda[i].sign() == 0) continue;
        atoms.push_back(json{{"kind", to_string(r.atom_kinds[i])}, {"parameter", r.atom_parameters[i]},
                             {"lambda", r.lambda[i]}});
    }
    json j{{"type", "majorization"},
           {"statement", "H <= A chi_[-1,1] - sum of window indicators almost everywhere"},
           {"ell", r.ell},
           {"windows", r.windows},
           {"A", r.A_opt},
           {"atoms", atoms},
           {"H", r.reconstructed_H}};
    put_optional(j, "a", r.a);
    return j;
}

CertificateCheck recheck_lp_certificate(const json& certificate) {
    try {
        const Rational A = certificate.at("A").get<Rational>();
        const auto windows = certificate.at("windows").get<std::vector<Window>>();
        const auto stored = certificate.at("H").get<PiecewiseLinearFn>();

        std::vector<std::pair<Rational, PiecewiseLinearFn>> terms;
        for (const auto& atom : certificate.at("atoms")) {
            const AtomKind kind = atom_kind_from_string(atom.at("kind").get<std::string>());
            const Rational param = atom.at("parameter").get<Rational>();
            const Rational lambda = atom.at("lambda").get<Rational>();
            if (lambda.sign() < 0) return {false, "negative coefficient"};
            if (param.sign() <= 0) return {false, "non-positive atom parameter"};
            if (kind == AtomKind::dilated_triangle) {
                if (param > Rational(1)) return {false, "triangle dilation above 1"};
                terms.emplace_back(lambda, pl_triangle(Rational(0), param));
            } else {
                terms.emplace_back(lambda, h_atom(param));
            }
        }
        const PiecewiseLinearFn rebuilt = pl_combine(terms);
        if (!(rebuilt == stored)) return {false, "stored H differs from the atom combination"};
        const LeResult le = pl_le(rebuilt, constraint_rhs(A, windows), Comparison::almost_everywhere);
        if (!le.holds) {
            return {false, "majorization fails at x = " + le.witness->x.str() + " (" + to_string(le.witness->side) + ")"};
        }
        return {true, "H is a nonnegative combination of convolution squares and the majorization holds"};
    } catch (const std::exception& e) {
        return {false, std::string("malformed certificate: ") + e.what()};
    }
}

}  // namespace pdextremal
