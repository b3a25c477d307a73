#pragma once

// JSON and CSV renderings. Rationals are strings ("num/den", or "num" for integers),
// piecewise linear functions are arrays of {x, left, value, right} knot records, and
// every JSON form parses back into an equal record.

#include "pdextremal/bounds.hpp"
#include "pdextremal/certify.hpp"
#include "pdextremal/extremal.hpp"
#include "pdextremal/piecewise_linear.hpp"
#include "pdextremal/rational.hpp"
#include "pdextremal/witness.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pdextremal {

using nlohmann::json;

void to_json(json& j, const Rational& r);
void from_json(const json& j, Rational& r);

void to_json(json& j, const Knot& k);
void from_json(const json& j, Knot& k);
void to_json(json& j, const PiecewiseLinearFn& f);
void from_json(const json& j, PiecewiseLinearFn& f);
void to_json(json& j, const LeWitness& w);
void from_json(const json& j, LeWitness& w);

void to_json(json& j, const BoundReport& r);
void from_json(const json& j, BoundReport& r);

void to_json(json& j, const PDCertificate& c);
void from_json(const json& j, PDCertificate& c);
void to_json(json& j, const NonnegResult& r);
void from_json(const json& j, NonnegResult& r);

void to_json(json& j, const Lemma1Params& p);
void from_json(const json& j, Lemma1Params& p);
void to_json(json& j, const WitnessEvaluation& w);
void from_json(const json& j, WitnessEvaluation& w);
void to_json(json& j, const MajorizationCertificate& c);
void from_json(const json& j, MajorizationCertificate& c);
void to_json(json& j, const CounterexampleReport& r);
void from_json(const json& j, CounterexampleReport& r);

void to_json(json& j, const Window& w);
void from_json(const json& j, Window& w);
void to_json(json& j, const LPResult& r);
void from_json(const json& j, LPResult& r);
void to_json(json& j, const SigmaSup& s);
void from_json(const json& j, SigmaSup& s);
void to_json(json& j, const PrimalResult& r);
void from_json(const json& j, PrimalResult& r);

/// Field-by-field equality for records without operator==.
bool same_record(const LPResult& x, const LPResult& y);
bool same_record(const WitnessEvaluation& x, const WitnessEvaluation& y);
bool same_record(const CounterexampleReport& x, const CounterexampleReport& y);
bool same_record(const PrimalResult& x, const PrimalResult& y);

/// Quotes a CSV field when it holds a comma, quote or line break.
std::string csv_field(const std::string& s);

/// ell,lower_G,lower_C,upper,upper_simple,k,p,exact_value[,integer_ell]
std::string bound_csv_header(bool with_integer_flag = false);
std::string bound_csv_row(const BoundReport& r, bool with_integer_flag = false);

/// Standalone majorization certificate for an LP result: ell, windows, A, the atoms
/// with their coefficients, and the breakpoints of H. Third parties can rebuild H from
/// the atoms and check H <= A chi_[-1,1] - windows from the breakpoints alone.
json lp_certificate(const LPResult& r);

struct CertificateCheck {
    bool valid = false;
    std::string reason;
};

/// Rebuilds H from the listed atoms, compares it with the stored breakpoints and
/// checks the majorization exactly.
CertificateCheck recheck_lp_certificate(const json& certificate);

}  // namespace pdextremal
