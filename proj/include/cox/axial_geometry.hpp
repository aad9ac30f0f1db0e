#pragma once

#include "cox/roots_reflections.hpp"

#include <json.hpp>

#include <Eigen/Dense>

namespace cox {

constexpr double kAxialTolerance = 1e-8;

struct AxisDiagnostic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpectralReport {
  GroupElement element;
  std::vector<double> eigen_args;  // arguments divided by 2 pi, in [0, 1)
  std::vector<int> exponents;
  long coxeter_number = 0;
  double max_residual = 0;
};

SpectralReport spectral_report(const CoxeterSystem& sys, const GroupElement& w,
                               double tol = kAxialTolerance);
std::string spectral_csv(const std::vector<std::pair<std::string, SpectralReport>>& rows);

enum class AxisKind { spherical, euclidean, hyperbolic };
std::string to_string(AxisKind k);

// Vectors in V* use dual coordinates F_i = F(alpha_i); w acts there by A = w^{-T}.
struct AxisDescription {
  AxisKind kind = AxisKind::spherical;
  Eigen::MatrixXd dual_action;
  // spherical: B-orthonormal basis of the Coxeter plane in V, rotated by +2pi/h, and its image in V*
  Eigen::MatrixXd plane;
  Eigen::MatrixXd dual_plane;
  long coxeter_number = 0;
  // euclidean: invariant line point + t * direction in V*, translated forward by w
  Eigen::VectorXd point;
  Eigen::VectorXd direction;
  double translation = 0;
  // hyperbolic: eigenvector rays in V* for the eigenvalues lambda > 1 > 1/lambda
  Eigen::VectorXd ray_plus;
  Eigen::VectorXd ray_minus;
  double lambda = 0;
  double invariance_error = 0;
};

AxisDescription axis(const CoxeterSystem& sys, const Mat& w, double tol = kAxialTolerance);

// Point of the axis at parameter s (an angle on the spherical circle, a length on the line).
Eigen::VectorXd axis_point(const AxisDescription& ax, double s);
// Parameter interval of the axis inside the open chamber g C0.
std::pair<double, double> chamber_segment(const AxisDescription& ax, const Mat& chamber);
std::pair<double, double> fundamental_segment(const AxisDescription& ax);

struct LemmaReport {
  int samples = 0;
  double axis_displacement = 0;
  double axis_spread = 0;  // max deviation of displacement along the axis circle
  double min_sample_displacement = 0;
  int violations = 0;
  double worst_excess = 0;
};

// Random points of the unit sphere of (V, B) never move less than the axis points.
LemmaReport lemma_check(const CoxeterSystem& sys, const Mat& w, int samples, unsigned seed,
                        double tol = kAxialTolerance);

// The chamber containing an interior point of the Tits cone, located by exact sign tests.
GroupElement locate_chamber(const CoxeterSystem& sys, const Vec& dual_point, long step_cap = 100000);
Vec rationalize(const Eigen::VectorXd& v);

struct AxialChamber {
  GroupElement element;
  double parameter = 0;
};

// Chambers met by the axis between parameters lo and hi; crossings come from the hyperplanes in refl.
std::vector<AxialChamber> axial_chambers(const CoxeterSystem& sys, const AxisDescription& ax,
                                         const ReflectionSet& refl, double lo, double hi);

struct AxialFactorization {
  bool found = false;
  std::vector<int> ordering;  // order of simple indices i for the walls g s_i g^-1
};

AxialFactorization axial_factorization_check(const CoxeterSystem& sys, const Mat& w,
                                             const GroupElement& chamber,
                                             const std::vector<int>& wall_order = {});

enum class Side { above, horizontal, below };
std::string to_string(Side s);

struct AxialOrdering {
  GroupElement base_chamber;
  double base_param = 0;
  Eigen::VectorXd base_point;
  std::vector<int> order;                      // reflection indices, ties broken by key
  std::vector<std::vector<int>> tie_classes;   // consecutive runs in order, size >= 2
  std::vector<double> angle;                   // per reflection index, NaN when not ordered
  std::vector<Side> side;                      // per reflection index
};

// An empty subset orders every reflection of refl. The base chamber defaults to C0 when the axis
// meets it, otherwise to the shortest axial chamber; base_param picks p inside it.
AxialOrdering axial_ordering(const CoxeterSystem& sys, const Mat& w, const ReflectionSet& refl,
                             const std::vector<int>& subset = {},
                             const std::optional<GroupElement>& base_chamber = std::nullopt,
                             std::optional<double> base_param = std::nullopt,
                             double tol = kAxialTolerance);

std::vector<std::vector<int>> tie_resolutions(const AxialOrdering& ord, size_t cap = 100000);
nlohmann::ordered_json ordering_to_json(const AxialOrdering& ord, const ReflectionSet& refl);

struct Table1Row {
  std::string type;
  std::vector<int> exponents;
  long h = 0;
  mpz_class order;
};

std::optional<Table1Row> table1_row(const std::string& catalog);

struct Table1Check {
  std::string group;
  Table1Row printed;
  std::vector<int> exponents;
  long h = 0;
  mpz_class order;                // enumerated, 0 when the enumeration hit a cap
  bool enumerated = false;
  mpz_class product_formula;      // prod (e_i + 1)
  bool exponents_match = false;
  bool h_match = false;
  bool order_match = false;
  std::string summary;
};

Table1Check verify_table1(const std::string& group, double tol = kAxialTolerance,
                          long size_cap = kDefaultSizeCap);

}  // namespace cox
