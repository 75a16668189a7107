#pragma once

#include "divreg/asymptotics.hpp"
#include "divreg/coulomb.hpp"
#include "divreg/fitter.hpp"
#include "divreg/qed_examples.hpp"
#include "divreg/quadrature.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace divreg {

//! Bumped whenever a report layout changes.
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

//! {"re": [[...]], "im": [[...]]}
Json to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &j);

//! Integer powers are written as numbers, fractional ones as "p/q".
Json to_json(const BasisFunction &b);
BasisFunction basis_from_json(const Json &j);

//! {regulator, dimension, terms: [{power, logpower, re, im}], remainder}
Json to_json(const AsymptoticExpansion &x);
AsymptoticExpansion expansion_from_json(const Json &j);

//! {regulator, dimension, reference_scale, exponent: [{power, logpower, re, im}]}
Json to_json(const DeviationFactor &f);
DeviationFactor factor_from_json(const Json &j);

Json to_json(const AdmissibilityReport &r);

//! {coefficients: [{power, logpower, re, im, stderr}], residual_norm, condition}
Json to_json(const FitResult &r);

Json to_json(const SeriesRegularization &r);
Json to_json(const ExampleReport &r);

//! Parse errors throw DomainError naming the offending key.
CouplingSeries series_from_json(const Json &j);

//! Ladder CSV: optional '#' comment lines, header `lambda,re,im,err`, one
//! row per rung. Values are written with 17 significant digits.
void write_ladder_csv(std::ostream &os, const SampledIntegral &s,
                      const std::vector<std::string> &comments = {});
//! Throws DomainError with the line number on malformed input.
SampledIntegral read_ladder_csv(std::istream &is,
                                std::vector<std::string> *comments = nullptr);

struct S1Row {
  double k = 0.0;
  int l = 0;
  Complex value;
};

//! Header `k,l,re,im`.
void write_s1_csv(std::ostream &os, const std::vector<S1Row> &rows);

//! Shortest representation that reads back to the same double.
std::string format_double(double v);

} // namespace divreg
