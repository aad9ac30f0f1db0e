#include "cox/axial_geometry.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>

namespace cox {

namespace {

constexpr double kTwoPi = 2 * M_PI;
constexpr double kAngleTie = 1e-9;

// Lower Cholesky factor of the positive definite Gram matrix.
Eigen::MatrixXd cholesky(const CoxeterSystem& sys) {
  Eigen::LLT<Eigen::MatrixXd> llt(to_double(sys.gram));
  if (llt.info() != Eigen::Success) throw NotSpherical("Gram matrix is not positive definite");
  return llt.matrixL();
}

// w in a B-orthonormal basis, where it is an orthogonal matrix.
Eigen::MatrixXd orthogonal_form(const Eigen::MatrixXd& L, const Eigen::MatrixXd& W) {
  Eigen::MatrixXd Lt = L.transpose();
  return Lt * W * Lt.inverse();
}

Eigen::MatrixXd dual_action(const Mat& w) { return to_double(Mat(inverse_matrix<Scalar>(w).transpose())); }

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

AxisDescription spherical_axis(const CoxeterSystem& sys, const Mat& w, double tol) {
  AxisDescription ax;
  ax.kind = AxisKind::spherical;
  auto h = element_order(w, 100000);
  if (!h || *h < 3) throw AxisDiagnostic("Coxeter element has no rotation plane");
  ax.coxeter_number = *h;
  const Eigen::MatrixXd L = cholesky(sys);
  const Eigen::MatrixXd W = to_double(w);
  const Eigen::MatrixXd Q = orthogonal_form(L, W);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Q.cast<std::complex<double>>());
  const std::complex<double> target = std::polar(1.0, kTwoPi / double(*h));
  int best = -1, close = 0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double d = std::abs(es.eigenvalues()(k) - target);
    if (d < 1e-6) ++close;
    if (best < 0 || d < std::abs(es.eigenvalues()(best) - target)) best = k;
  }
  if (close != 1) throw AxisDiagnostic("rotation angle 2pi/h is not a simple eigenvalue");
  Eigen::VectorXcd z = es.eigenvectors().col(best);
  Eigen::MatrixXd Y(Q.rows(), 2);
  Y.col(0) = z.real();
  Y.col(1) = -z.imag();
  Y.col(0).normalize();
  Y.col(1) -= Y.col(0).dot(Y.col(1)) * Y.col(0);
  Y.col(1).normalize();
  ax.plane = L.transpose().inverse() * Y;
  ax.dual_plane = to_double(sys.gram) * ax.plane;
  ax.dual_action = dual_action(w);
  const double c = std::cos(kTwoPi / double(*h)), s = std::sin(kTwoPi / double(*h));
  Eigen::Matrix2d R;
  R << c, -s, s, c;
  ax.invariance_error = (W * ax.plane - ax.plane * R).cwiseAbs().maxCoeff();
  if (ax.invariance_error > tol) throw AxisDiagnostic("Coxeter plane fails the rotation check");
  return ax;
}

AxisDescription euclidean_axis(const CoxeterSystem& sys, const Mat& w, double tol) {
  AxisDescription ax;
  ax.kind = AxisKind::euclidean;
  const Mat K = kernel_basis(sys.gram);
  if (K.cols() != 1) throw AxisDiagnostic("affine Gram form must have a one-dimensional kernel");
  Eigen::VectorXd delta = to_double(Vec(K.col(0)));
  if (delta.sum() < 0) delta = -delta;
  const int n = int(delta.size());
  const Eigen::MatrixXd A = dual_action(w);
  ax.dual_action = A;

  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(n) / delta.sum();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(delta);
  const Eigen::MatrixXd Qfull = qr.householderQ();
  const Eigen::MatrixXd Q = Qfull.rightCols(n - 1);
  const Eigen::MatrixXd M = Q.transpose() * A * Q - Eigen::MatrixXd::Identity(n - 1, n - 1);
  const Eigen::VectorXd tau = Q.transpose() * (A * x0 - x0);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv(r) > 1e-9) ++r;
  if (r == n - 1) throw AxisDiagnostic("linear part has no fixed direction");
  const Eigen::MatrixXd Img = svd.matrixU().leftCols(r);
  const Eigen::MatrixXd Ker = svd.matrixV().rightCols(n - 1 - r);
  Eigen::MatrixXd basis(n - 1, n - 1);
  basis << Ker, Img;
  const Eigen::VectorXd c = basis.fullPivLu().solve(tau);
  const Eigen::VectorXd fix = Ker * c.head(n - 1 - r);
  const Eigen::VectorXd mov = Img * c.tail(r);
  const Eigen::VectorXd y = svd.solve(-mov);

  ax.point = x0 + Q * y;
  const Eigen::VectorXd t = Q * fix;
  ax.translation = t.norm();
  if (ax.translation < tol) throw AxisDiagnostic("Coxeter element has a fixed point");
  ax.direction = t / ax.translation;
  ax.invariance_error = std::max((A * ax.point - ax.point - t).cwiseAbs().maxCoeff(),
                                 (A * ax.direction - ax.direction).cwiseAbs().maxCoeff());
  if (ax.invariance_error > tol) throw AxisDiagnostic("affine axis fails the invariance check");
  return ax;
}

AxisDescription hyperbolic_axis(const Mat& w, double tol) {
  AxisDescription ax;
  ax.kind = AxisKind::hyperbolic;
  const Eigen::MatrixXd A = dual_action(w);
  ax.dual_action = A;
  Eigen::EigenSolver<Eigen::MatrixXd> es(A);
  const auto& ev = es.eigenvalues();
  int hi = 0, lo = 0;
  for (int k = 1; k < ev.size(); ++k) {
    if (std::abs(ev(k)) > std::abs(ev(hi))) hi = k;
    if (std::abs(ev(k)) < std::abs(ev(lo))) lo = k;
  }
  if (std::abs(ev(hi).imag()) > tol || std::abs(ev(lo).imag()) > tol ||
      std::abs(ev(hi)) < 1 + 1e-6)
    throw AxisDiagnostic("no real dominant eigenvalue above 1");
  ax.lambda = ev(hi).real();
  ax.ray_plus = es.eigenvectors().col(hi).real().normalized();
  ax.ray_minus = es.eigenvectors().col(lo).real().normalized();
  if (ax.ray_plus.sum() < 0) ax.ray_plus = -ax.ray_plus;
  if (ax.ray_minus.sum() < 0) ax.ray_minus = -ax.ray_minus;
  ax.invariance_error =
      std::max((A * ax.ray_plus - ev(hi).real() * ax.ray_plus).cwiseAbs().maxCoeff(),
               (A * ax.ray_minus - ev(lo).real() * ax.ray_minus).cwiseAbs().maxCoeff());
  if (ax.invariance_error > 1e3 * tol) throw AxisDiagnostic("eigenvector rays are not invariant");
  return ax;
}

}  // namespace

SpectralReport spectral_report(const CoxeterSystem& sys, const GroupElement& w, double tol) {
  if (sys.classification != Geometry::spherical)
    throw NotSpherical("spectral_report needs a finite Coxeter group");
  SpectralReport rep;
  rep.element = w;
  auto h = element_order(w.matrix, 100000);
  if (!h) throw std::logic_error("finite group element without finite order");
  rep.coxeter_number = *h;
  const Eigen::MatrixXd Q = orthogonal_form(cholesky(sys), to_double(w.matrix));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Q.cast<std::complex<double>>());
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    double a = std::arg(es.eigenvalues()(k)) / kTwoPi;
    if (a < 0) a += 1;
    if (a >= 1) a -= 1;
    long e = std::lround(a * double(*h));
    double res = std::abs(a - double(e) / double(*h));
    e %= *h;
    if (res > tol) {
      std::ostringstream os;
      os << "eigen-argument " << a << " is not within " << tol << " of any e/h with h = " << *h;
      throw AxisDiagnostic(os.str());
    }
    rep.max_residual = std::max(rep.max_residual, res);
    rep.eigen_args.push_back(double(e) / double(*h));
    rep.exponents.push_back(int(e));
  }
  std::sort(rep.eigen_args.begin(), rep.eigen_args.end());
  std::sort(rep.exponents.begin(), rep.exponents.end());
  return rep;
}

std::string spectral_csv(const std::vector<std::pair<std::string, SpectralReport>>& rows) {
  std::ostringstream os;
  os << "group,coxeter_number,exponents,max_residual\n";
  for (const auto& [g, r] : rows)
    os << g << "," << r.coxeter_number << ",\"" << join(r.exponents) << "\"," << r.max_residual
       << "\n";
  return os.str();
}

std::string to_string(AxisKind k) {
  switch (k) {
    case AxisKind::spherical: return "spherical";
    case AxisKind::euclidean: return "euclidean";
    case AxisKind::hyperbolic: return "hyperbolic";
  }
  return "?";
}

std::string to_string(Side s) {
  switch (s) {
    case Side::above: return "above";
    case Side::horizontal: return "horizontal";
    case Side::below: return "below";
  }
  return "?";
}

AxisDescription axis(const CoxeterSystem& sys, const Mat& w, double tol) {
  switch (sys.classification) {
    case Geometry::spherical: return spherical_axis(sys, w, tol);
    case Geometry::affine: return euclidean_axis(sys, w, tol);
    case Geometry::lorentzian: return hyperbolic_axis(w, tol);
    default: throw AxisDiagnostic("no axis model for higher-rank signature");
  }
}

Eigen::VectorXd axis_point(const AxisDescription& ax, double s) {
  switch (ax.kind) {
    case AxisKind::spherical: return std::cos(s) * ax.dual_plane.col(0) + std::sin(s) * ax.dual_plane.col(1);
    case AxisKind::euclidean: return ax.point + s * ax.direction;
    case AxisKind::hyperbolic: return std::exp(s) * ax.ray_plus + std::exp(-s) * ax.ray_minus;
  }
  return {};
}

std::pair<double, double> chamber_segment(const AxisDescription& ax, const Mat& chamber) {
  // F lies in g C0 iff g^T F has positive coordinates.
  const Eigen::MatrixXd G = to_double(chamber).transpose();
  double lo = -INFINITY, hi = INFINITY;
  if (ax.kind == AxisKind::euclidean) {
    const Eigen::VectorXd P = G * ax.point, D = G * ax.direction;
    for (int i = 0; i < P.size(); ++i) {
      if (std::abs(D(i)) < 1e-12) {
        if (P(i) <= 0) throw AxisDiagnostic("axis misses the chamber");
        continue;
      }
      const double t = -P(i) / D(i);
      if (D(i) > 0) lo = std::max(lo, t);
      else hi = std::min(hi, t);
    }
  } else if (ax.kind == AxisKind::spherical) {
    const Eigen::MatrixXd Pl = G * ax.dual_plane;
    const int samples = 72000;
    double theta0 = NAN;
    for (int k = 0; k < samples && std::isnan(theta0); ++k) {
      const double th = kTwoPi * k / samples;
      if (((std::cos(th) * Pl.col(0) + std::sin(th) * Pl.col(1)).array() > 0).all()) theta0 = th;
    }
    if (std::isnan(theta0)) throw AxisDiagnostic("Coxeter plane misses the chamber");
    for (int i = 0; i < Pl.rows(); ++i) {
      double phi = std::atan2(Pl(i, 1), Pl(i, 0));
      while (phi - theta0 > M_PI) phi -= kTwoPi;
      while (theta0 - phi > M_PI) phi += kTwoPi;
      lo = std::max(lo, phi - M_PI / 2);
      hi = std::min(hi, phi + M_PI / 2);
    }
  } else {
    throw AxisDiagnostic("chamber segments are implemented for spherical and Euclidean axes");
  }
  if (!(hi - lo > kAngleTie)) throw AxisDiagnostic("axis misses the chamber");
  return {lo, hi};
}

std::pair<double, double> fundamental_segment(const AxisDescription& ax) {
  return chamber_segment(ax, identity<Scalar>(int(ax.dual_action.rows())));
}

GroupElement default_base_chamber(const CoxeterSystem& sys, const AxisDescription& ax,
                                  const ReflectionSet& refl) {
  try {
    fundamental_segment(ax);
    return {sys.identity(), {}};
  } catch (const AxisDiagnostic&) {
  }
  const auto chambers = ax.kind == AxisKind::spherical ? axial_chambers(sys, ax, refl, 0, kTwoPi)
                                                       : axial_chambers(sys, ax, refl, -20, 20);
  if (chambers.empty()) throw AxisDiagnostic("no axial chamber found");
  const GroupElement* best = nullptr;
  for (const auto& c : chambers)
    if (!best || c.element.word.size() < best->word.size() ||
        (c.element.word.size() == best->word.size() && c.element.key() < best->key()))
      best = &c.element;
  return *best;
}

LemmaReport lemma_check(const CoxeterSystem& sys, const Mat& w, int samples, unsigned seed,
                        double tol) {
  const AxisDescription ax = spherical_axis(sys, w, tol);
  const Eigen::MatrixXd L = cholesky(sys);
  const Eigen::MatrixXd Q = orthogonal_form(L, to_double(w));
  const Eigen::MatrixXd Y = L.transpose() * ax.plane;
  auto disp = [&](const Eigen::VectorXd& y) {
    return std::acos(std::clamp(y.dot(Q * y) / y.squaredNorm(), -1.0, 1.0));
  };
  LemmaReport rep;
  rep.samples = samples;
  rep.axis_displacement = disp(Y.col(0));
  for (int k = 0; k < 64; ++k) {
    const double th = kTwoPi * k / 64;
    Eigen::VectorXd y = std::cos(th) * Y.col(0) + std::sin(th) * Y.col(1);
    rep.axis_spread = std::max(rep.axis_spread, std::abs(disp(y) - rep.axis_displacement));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0, 1);
  rep.min_sample_displacement = INFINITY;
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd y(Q.rows());
    for (int i = 0; i < y.size(); ++i) y(i) = g(rng);
    y.normalize();
    const double d = disp(y);
    rep.min_sample_displacement = std::min(rep.min_sample_displacement, d);
    const double excess = rep.axis_displacement - d;
    if (excess > tol) ++rep.violations;
    rep.worst_excess = std::max(rep.worst_excess, excess);
  }
  return rep;
}

Vec rationalize(const Eigen::VectorXd& v) {
  Vec out(v.size());
  for (int i = 0; i < v.size(); ++i) out(i) = Scalar(mpq_class(v(i)));
  return out;
}

GroupElement locate_chamber(const CoxeterSystem& sys, const Vec& dual_point, long step_cap) {
  Vec F = dual_point;
  std::vector<int> word;
  const int n = sys.rank();
  for (long step = 0;; ++step) {
    int i = -1;
    for (int j = 0; j < n; ++j) {
      const int s = F(j).sign();
      if (s == 0) throw AxisDiagnostic("point lies on a reflection hyperplane");
      if (s < 0) {
        i = j;
        break;
      }
    }
    if (i < 0) break;
    if (step >= step_cap) throw CapExceeded("chamber walk did not reach the fundamental chamber");
    const Scalar Fi = F(i);
    for (int j = 0; j < n; ++j)
      if (!sys.gram(i, j).is_zero()) F(j) -= Scalar(2) * sys.gram(i, j) * Fi;
    word.push_back(i);
  }
  return {sys.word_matrix(word), word};
}

std::vector<AxialChamber> axial_chambers(const CoxeterSystem& sys, const AxisDescription& ax,
                                         const ReflectionSet& refl, double lo, double hi) {
  if (ax.kind == AxisKind::hyperbolic)
    throw AxisDiagnostic("axial chambers are implemented for spherical and Euclidean axes");
  if (!(lo < hi)) throw std::invalid_argument("axial_chambers: empty window");
  std::vector<double> cuts{lo, hi};
  for (const auto& root : refl.roots) {
    const Eigen::VectorXd b = to_double(root);
    if (ax.kind == AxisKind::spherical) {
      const double a0 = ax.dual_plane.col(0).dot(b), a1 = ax.dual_plane.col(1).dot(b);
      if (std::hypot(a0, a1) < 1e-12) throw AxisDiagnostic("a hyperplane contains the Coxeter plane");
      double th = std::atan2(-a0, a1);
      while (th > lo) th -= M_PI;
      for (; th < hi; th += M_PI)
        if (th > lo) cuts.push_back(th);
    } else {
      const double p = ax.point.dot(b), d = ax.direction.dot(b);
      if (std::abs(d) < 1e-12) {
        if (std::abs(p) < 1e-12) throw AxisDiagnostic("axis lies in a reflection hyperplane");
        continue;
      }
      const double t = -p / d;
      if (t > lo && t < hi) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<AxialChamber> out;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] - cuts[k] < kAngleTie) continue;
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    GroupElement g = locate_chamber(sys, rationalize(axis_point(ax, mid)));
    if (!out.empty() && out.back().element.matrix == g.matrix) continue;
    out.push_back({std::move(g), mid});
  }
  const bool closed = ax.kind == AxisKind::spherical && hi - lo >= kTwoPi - kAngleTie;
  if (closed && out.size() > 1 && out.front().element.matrix == out.back().element.matrix)
    out.pop_back();
  return out;
}

AxialFactorization axial_factorization_check(const CoxeterSystem& sys, const Mat& w,
                                             const GroupElement& chamber,
                                             const std::vector<int>& wall_order) {
  const int n = sys.rank();
  if (n > 8) throw CapExceeded("axial_factorization_check: rank above 8");
  std::vector<int> idx = wall_order;
  if (idx.empty()) {
    idx.resize(n);
    std::iota(idx.begin(), idx.end(), 0);
  }
  const Mat gi = inverse_matrix<Scalar>(chamber.matrix);
  std::vector<Mat> walls;
  for (int i = 0; i < n; ++i) walls.push_back(chamber.matrix * sys.simple[i] * gi);
  std::sort(idx.begin(), idx.end());
  AxialFactorization res;
  do {
    Mat prod = sys.identity();
    for (int i : idx) prod = prod * walls[i];
    if (prod == w) {
      res.found = true;
      res.ordering = idx;
      break;
    }
  } while (std::next_permutation(idx.begin(), idx.end()));
  return res;
}

AxialOrdering axial_ordering(const CoxeterSystem& sys, const Mat& w, const ReflectionSet& refl,
                             const std::vector<int>& subset,
                             const std::optional<GroupElement>& base_chamber,
                             std::optional<double> base_param, double tol) {
  const AxisDescription ax = axis(sys, w, tol);
  if (ax.kind == AxisKind::hyperbolic)
    throw AxisDiagnostic("axial orderings are implemented for spherical and affine groups");
  AxialOrdering ord;
  ord.base_chamber = base_chamber ? *base_chamber : default_base_chamber(sys, ax, refl);
  const auto [lo, hi] = chamber_segment(ax, ord.base_chamber.matrix);
  const double s = base_param.value_or(0.5 * (lo + hi));
  if (!(s > lo && s < hi)) throw std::invalid_argument("base point outside the base chamber");
  ord.base_param = s;

  ord.base_point = axis_point(ax, s);
  const Eigen::VectorXd u2 = ax.dual_action * ord.base_point - ord.base_point;
  std::vector<int> members = subset;
  if (members.empty()) {
    members.resize(refl.size());
    std::iota(members.begin(), members.end(), 0);
  }
  ord.angle.assign(refl.size(), NAN);
  ord.side.assign(refl.size(), Side::horizontal);
  for (int r : members) {
    const Eigen::VectorXd b = to_double(refl.roots[r]);
    const double y = -ord.base_point.dot(b), x = u2.dot(b);
    if (std::hypot(x, y) < tol) throw AxisDiagnostic("hyperplane of " + refl.names[r] + " contains the axis");
    double a = std::atan2(y, x);
    if (a < 0) a += M_PI;
    if (a >= M_PI) a -= M_PI;
    ord.angle[r] = a;
    ord.side[r] = std::abs(a - M_PI / 2) <= kAngleTie ? Side::horizontal
                  : a < M_PI / 2                     ? Side::above
                                                     : Side::below;
  }
  std::vector<std::string> keys(refl.size());
  for (int r : members) keys[r] = refl.reflections[r].key();
  std::sort(members.begin(), members.end(), [&](int p, int q) { return ord.angle[p] < ord.angle[q]; });
  size_t k = 0;
  while (k < members.size()) {
    size_t e = k + 1;
    while (e < members.size() && ord.angle[members[e]] - ord.angle[members[e - 1]] <= kAngleTie) ++e;
    std::sort(members.begin() + k, members.begin() + e, [&](int p, int q) { return keys[p] < keys[q]; });
    if (e - k > 1) ord.tie_classes.emplace_back(members.begin() + k, members.begin() + e);
    k = e;
  }
  ord.order = members;
  return ord;
}

std::vector<std::vector<int>> tie_resolutions(const AxialOrdering& ord, size_t cap) {
  std::vector<std::vector<int>> out{ord.order};
  for (const auto& cls : ord.tie_classes) {
    const size_t start = std::find(ord.order.begin(), ord.order.end(), cls.front()) - ord.order.begin();
    std::vector<std::vector<int>> next;
    for (const auto& base : out) {
      std::vector<int> perm = cls;
      std::sort(perm.begin(), perm.end());
      do {
        auto v = base;
        std::copy(perm.begin(), perm.end(), v.begin() + start);
        next.push_back(std::move(v));
        if (next.size() > cap) throw CapExceeded("too many tie resolutions");
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out = std::move(next);
  }
  return out;
}

nlohmann::ordered_json ordering_to_json(const AxialOrdering& ord, const ReflectionSet& refl) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["base_point"] = std::vector<double>(ord.base_point.data(), ord.base_point.data() + ord.base_point.size());
  auto& rows = j["order"] = nlohmann::ordered_json::array();
  for (int r : ord.order)
    rows.push_back({{"reflection", refl.names[r]},
                    {"key", refl.reflections[r].key()},
                    {"angle", ord.angle[r]},
                    {"side", to_string(ord.side[r])}});
  auto& ties = j["tie_classes"] = nlohmann::ordered_json::array();
  for (const auto& cls : ord.tie_classes) {
    std::vector<std::string> names;
    for (int r : cls) names.push_back(refl.names[r]);
    ties.push_back(names);
  }
  return j;
}

std::optional<Table1Row> table1_row(const std::string& catalog) {
  std::smatch m;
  static const std::regex dihedral(R"(I2:(\d+))"), typed(R"(([A-H])(\d+))");
  auto fact = [](long n) {
    mpz_class f = 1;
    for (long k = 2; k <= n; ++k) f *= k;
    return f;
  };
  Table1Row row;
  if (std::regex_match(catalog, m, dihedral)) {
    const long q = std::stol(m[1]);
    row = {"I2(" + std::to_string(q) + ")", {1, int(q - 1)}, q, mpz_class(2 * q)};
    return row;
  }
  if (!std::regex_match(catalog, m, typed)) return std::nullopt;
  const char t = m[1].str()[0];
  const int n = std::stoi(m[2]);
  row.type = catalog;
  switch (t) {
    case 'A':
      for (int e = 1; e <= n; ++e) row.exponents.push_back(e);
      row.h = n + 1;
      row.order = fact(n + 1);
      return row;
    case 'B':
    case 'C':
      for (int e = 1; e <= 2 * n - 1; e += 2) row.exponents.push_back(e);
      row.h = 2 * n;
      row.order = fact(n) << n;
      return row;
    case 'D':
      for (int e = 1; e <= 2 * n - 3; e += 2) row.exponents.push_back(e);
      row.exponents.push_back(n - 1);
      std::sort(row.exponents.begin(), row.exponents.end());
      row.h = 2 * n - 2;
      row.order = fact(n) << (n - 1);
      return row;
    case 'E':
      if (n == 6) row = {catalog, {1, 4, 5, 7, 8, 11}, 12, mpz_class(51840)};
      else if (n == 7) row = {catalog, {1, 5, 7, 9, 11, 13, 17}, 18, mpz_class(2903040)};
      else if (n == 8) row = {catalog, {1, 7, 11, 13, 17, 19, 23, 29}, 30, mpz_class(696729600)};
      else return std::nullopt;
      return row;
    case 'F':
      if (n != 4) return std::nullopt;
      return Table1Row{catalog, {1, 5, 7, 11}, 12, mpz_class(48)};
    case 'G':
      if (n != 2) return std::nullopt;
      return Table1Row{catalog, {1, 5}, 6, mpz_class(12)};
    case 'H':
      if (n == 3) return Table1Row{catalog, {1, 5, 9}, 10, mpz_class(120)};
      if (n == 4) return Table1Row{catalog, {1, 11, 19, 29}, 30, mpz_class(14400)};
      return std::nullopt;
  }
  return std::nullopt;
}

Table1Check verify_table1(const std::string& group, double tol, long size_cap) {
  auto row = table1_row(group);
  if (!row) throw std::invalid_argument("no reference row for " + group);
  Table1Check c;
  c.group = group;
  c.printed = *row;
  const CoxeterSystem sys = build_system(group);
  const SpectralReport sp = spectral_report(sys, coxeter_element(sys), tol);
  c.exponents = sp.exponents;
  c.h = sp.coxeter_number;
  c.product_formula = 1;
  for (int e : c.exponents) c.product_formula *= e + 1;
  const GroupEnumeration E = enumerate(sys, kDefaultLengthCap, size_cap);
  c.enumerated = E.complete;
  if (E.complete) c.order = mpz_class(static_cast<unsigned long>(E.size()));
  c.exponents_match = c.exponents == row->exponents;
  c.h_match = c.h == row->h;
  const mpz_class& ours = c.enumerated ? c.order : c.product_formula;
  c.order_match = ours == row->order;

  std::ostringstream os;
  os << "h = " << c.h << ", exponents " << join(c.exponents) << ", |W| = " << ours.get_str();
  if (!c.enumerated) os << " (product formula, enumeration capped)";
  os << ": ";
  if (c.exponents_match && c.h_match && c.order_match) {
    os << "MATCH";
  } else {
    os << "MISMATCH (printed";
    if (!c.h_match) os << " h = " << row->h;
    if (!c.exponents_match) os << " exponents " << join(row->exponents);
    if (!c.order_match) os << " |W| = " << row->order.get_str();
    os << ")";
  }
  c.summary = os.str();
  return c;
}

}  // namespace cox
