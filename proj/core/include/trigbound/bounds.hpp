#pragma once

#include <map>
#include <optional>
#include <string>

#include "trigbound/trig_poly.hpp"

namespace trigbound::bounds {

// Which form of C_{N,n,d} to use.
enum class Constant { kSharp, kSimple };

const char* to_string(Constant c);
Constant constant_from_string(const std::string& name);

// (1 - 2n/N)^(-d/2). Requires N >= 2n+1.
double cnd_simple(int N, int n, int d);

struct SharpOptions {
  int scan_points = 2048;  // per period cell [0, 2 pi / N]
  double tol = 1e-10;      // golden-section stopping width in theta
};

// [sup_theta sum_k |sin(N theta/2) sin((N-2n)(theta-theta_k)/2)| / sin^2((theta-theta_k)/2)]^d
//   / (N (N-2n))^d
//
// The univariate sum is 2 pi / N periodic, so the supremum is taken over a
// single cell by a dense scan followed by golden-section refinement.
double cnd_sharp(int N, int n, int d, const SharpOptions& options = {});

double bound_constant(int N, int n, int d, Constant which);

// C_{N,n,d} * ||p||_{N^d,inf} >= ||p||_inf.
double upper_bound_complex(const GridExtrema& grid, int n, Constant which);
double upper_bound_complex(const SampleGrid& grid, int n, Constant which);

// (A + B + C (A - B)) / 2 >= max p for real p.
double upper_bound_real(const GridExtrema& grid, int n, Constant which);
double upper_bound_real(const SampleGrid& grid, int n, Constant which);

// (A + B - C (A - B)) / 2 <= min p for real p.
double lower_bound_real(const GridExtrema& grid, int n, Constant which);
double lower_bound_real(const SampleGrid& grid, int n, Constant which);

// (C+1)/(C-1); +infinity when C == 1.
double positivity_threshold(double c);

struct BoundReport {
  int N = 0;
  int n = 0;
  int d = 0;
  Constant constant = Constant::kSharp;
  double cnd_sharp = 0.0;
  double cnd_simple = 0.0;
  double A = 0.0;  // grid max
  double B = 0.0;  // grid min
  double upper = 0.0;
  double lower = 0.0;
  double kappa = 0.0;  // A/B, 0/0 := 1, +inf when B == 0 < A, NaN when B < 0
  double threshold_sharp = 0.0;
  double threshold_simple = 0.0;
  bool certified_positive = false;
};

// Strict global positivity from samples: B > 0 and kappa below the
// threshold of the selected constant. upper/lower use the same constant.
BoundReport certify_positive(const GridExtrema& grid, int n, Constant which = Constant::kSharp);
BoundReport certify_positive(const SampleGrid& grid, int n, Constant which = Constant::kSharp);

// Dynamic range A/B with the conventions documented on BoundReport::kappa.
double dynamic_range(double A, double B);

struct PriorBound {
  double constant = 0.0;
  double bound = 0.0;  // constant * ||p||_{N^d,inf}
};

// Classical sup-norm bounds from uniform samples, keyed "lebesgue",
// "ehlich_zeller", "wunder_boche". Only the bounds whose hypotheses hold
// for (N, n, d) are present.
std::map<std::string, PriorBound> prior_bounds(const GridExtrema& grid, int n);
std::map<std::string, PriorBound> prior_bounds(const SampleGrid& grid, int n);

std::optional<double> lebesgue_constant(int N, int n, int d);
std::optional<double> ehlich_zeller_constant(int N, int n, int d);
std::optional<double> wunder_boche_constant(int N, int n, int d);

}  // namespace trigbound::bounds
