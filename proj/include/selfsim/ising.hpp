#pragma once

#include <map>
#include <string>
#include <vector>

#include "selfsim/genfun.hpp"
#include "selfsim/real.hpp"

namespace selfsim::ising {

using graph::Family;
using poly::LaurentPoly;

// beta times J is the only combination that matters. The "" key holds the
// global coupling; other keys override it per edge label.
struct IsingParams {
  Real beta = 1;
  std::map<std::string, Real> couplings{{"", Real(1)}};

  static IsingParams uniform(const Real& beta, const Real& j);
  Real coupling(const std::string& label) const;
  bool per_label() const;
  void validate() const;  // DomainError on beta < 0 or no coupling
};

// tanh(beta J) and log cosh(beta J) written in terms of z = tanh.
Real log_cosh_from_z(const Real& z);

// Z as an exact Laurent polynomial in y (or y_<label> when per_label), assembled
// from the closed-polygon generating function and the counts of the
// constructed loopless graph.
LaurentPoly partition_polynomial(Family f, int n, bool per_label);

// Z evaluated at the given parameters from the same high-temperature expansion.
Real partition_value(Family f, int n, const IsingParams& p);

// log Gamma_n(z) from product forms, never expanding a polynomial.
// Defined for 0 <= z < 1 and any level the graph formulas cover.
Real log_gamma(Family f, int n, const Real& z);

// log(Z_n) / |V_n| at z = tanh(beta J).
Real free_energy_density(Family f, int n, const Real& z);

struct LimitSeries {
  Family family = Family::Hanoi;
  Real z = 0;
  Real constant = 0;           // log 2 + (E/V) log cosh
  std::vector<Real> terms;     // summands after the constant
  int truncation = 0;          // index of the last summand kept
  Real bound = 0;              // bound on the discarded tail
  Real value = 0;
  bool exact = false;          // closed expression, no truncation
};

// Refuses z >= 1 (zero temperature) and z < 0.
LimitSeries thermodynamic_limit(Family f, const Real& z, const Real& tol);

enum class Variant { Sierpinski, Hanoi };
std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);

struct RenormStep {
  Real f, c;
};
// y > 0 required.
RenormStep renormalization_step(Variant v, const Real& y);

// Z_n(y) from the closed form in z = (y^2 - 1)/(y^2 + 1).
Real renorm_partition(Variant v, int n, const Real& y);

// Hanoi graph with triangle edges (those changing only the first letter) at
// coupling y_t and connecting edges at y_c.
Real hanoi_two_coupling_partition(int n, const Real& y_t, const Real& y_c);

struct LabelRow {
  std::string label;
  poly::Cumulants stats;
};
struct LabelTable {
  Family family = Family::Hanoi;
  int level = 0;
  genfun::Labeling labeling = genfun::Labeling::Labels;
  std::vector<LabelRow> rows;
};
LabelTable label_statistics(Family f, int n, genfun::Labeling l);

// family,level,labeling,label,mean,variance,kappa3,kappa4,skewness,excess_kurtosis
std::string csv_header();
std::string to_csv(const LabelTable& t);

}  // namespace selfsim::ising
