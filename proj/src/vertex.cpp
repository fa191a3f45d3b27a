#include "origami/vertex.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "origami/errors.hpp"

namespace origami {

namespace {

Eigen::Vector4d canonicalize(Eigen::Vector4d v) {
  double amax = v.cwiseAbs().maxCoeff();
  if (!(amax > 0))
    throw Error(ErrorCode::InternalInconsistency, "zero mode vector");
  v /= amax;
  for (int i = 0; i < 4; ++i)
    if (std::abs(v[i]) < tol::kModeZero) v[i] = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (v[i] != 0.0) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  return v;
}

// second-order closure form whose zero directions inside the first-order
// kernel are the branch tangents
double branch_quadratic(const VertexGeometry& g, const Eigen::Vector4d& v) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      s += v[i] * v[j] * std::sin(g.theta[j] - g.theta[i]);
  return s;
}

Eigen::Vector3d axial_residual(const Eigen::Matrix3d& p) {
  return {0.5 * (p(2, 1) - p(1, 2)), 0.5 * (p(0, 2) - p(2, 0)),
          0.5 * (p(1, 0) - p(0, 1))};
}

Eigen::Matrix3d closure_product(const VertexGeometry& g,
                                const Eigen::Vector4d& rho) {
  Eigen::Matrix3d p = Eigen::Matrix3d::Identity();
  for (int i = 0; i < 4; ++i) p = p * crease_rotation(g.theta[i], rho[i]);
  return p;
}

// solves the three free angles so the closure product returns to identity,
// with crease `pin` held at `pin_value`; returns nothing on failure
std::optional<Eigen::Vector4d> newton_solve(const VertexGeometry& g,
                                            Eigen::Vector4d rho, int pin,
                                            double pin_value) {
  rho[pin] = pin_value;
  std::array<int, 3> free{};
  for (int i = 0, k = 0; i < 4; ++i)
    if (i != pin) free[k++] = i;

  for (int iter = 0; iter < tol::kNewtonMaxIter; ++iter) {
    Eigen::Matrix3d p = closure_product(g, rho);
    if (identity_distance(p) < tol::kNewtonConverge) return rho;

    Eigen::Vector3d r = axial_residual(p);
    Eigen::Matrix3d jac;
    const double h = 1e-7;
    for (int k = 0; k < 3; ++k) {
      Eigen::Vector4d hi = rho, lo = rho;
      hi[free[k]] += h;
      lo[free[k]] -= h;
      jac.col(k) = (axial_residual(closure_product(g, hi)) -
                    axial_residual(closure_product(g, lo))) /
                   (2.0 * h);
    }
    Eigen::Vector3d delta = jac.partialPivLu().solve(r);
    if (!delta.allFinite()) return std::nullopt;
    double dmax = delta.cwiseAbs().maxCoeff();
    if (dmax > 0.5) delta *= 0.5 / dmax;
    for (int k = 0; k < 3; ++k) rho[free[k]] -= delta[k];
    for (int k = 0; k < 3; ++k)
      if (std::abs(rho[free[k]]) >= M_PI - tol::kAngle) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

VertexGeometry VertexGeometry::from_sectors(
    const std::array<double, 4>& sectors) {
  double sum = 0.0;
  for (double s : sectors) {
    if (!(s > tol::kAngle) || !(s < 2.0 * M_PI))
      throw Error(ErrorCode::DegenerateAngles,
                  "sector angles must lie in (0, 2*pi)");
    sum += s;
  }
  if (std::abs(sum - 2.0 * M_PI) > tol::kSectorSum)
    throw Error(ErrorCode::DegenerateAngles, "sector angles must sum to 2*pi");
  VertexGeometry g;
  g.sector = sectors;
  g.theta[0] = 0.0;
  for (int i = 1; i < 4; ++i) g.theta[i] = g.theta[i - 1] + sectors[i - 1];
  return g;
}

VertexGeometry VertexGeometry::from_crease_angles(
    const std::array<double, 4>& angles) {
  std::array<double, 4> a = angles;
  for (double& t : a) t = wrap_2pi(t);
  std::sort(a.begin(), a.end());
  std::array<double, 4> sectors{};
  for (int i = 0; i < 4; ++i) {
    double next = (i == 3) ? a[0] + 2.0 * M_PI : a[i + 1];
    sectors[i] = next - a[i];
  }
  VertexGeometry g = from_sectors(sectors);
  g.theta = a;
  return g;
}

bool VertexGeometry::has_collinear_pair(int* which) const {
  for (int k = 0; k < 2; ++k) {
    double gap = wrap_2pi(theta[k + 2] - theta[k]);
    if (std::abs(gap - M_PI) < tol::kAngle) {
      if (which) *which = k;
      return true;
    }
  }
  return false;
}

bool VertexGeometry::doubly_degenerate() const {
  return std::abs(wrap_2pi(theta[2] - theta[0]) - M_PI) < tol::kAngle &&
         std::abs(wrap_2pi(theta[3] - theta[1]) - M_PI) < tol::kAngle;
}

bool VertexGeometry::flat_foldable(double tolerance) const {
  return std::abs(sector[0] + sector[2] - M_PI) < tolerance &&
         std::abs(sector[1] + sector[3] - M_PI) < tolerance;
}

FoldingMultipliers folding_multipliers(double alpha, double beta) {
  if (!(alpha > 0.0) || !(alpha < M_PI) || !(beta > 0.0) || !(beta < M_PI))
    throw Error(ErrorCode::AngleOutOfRange,
                "sector angles must lie in (0, pi)");
  double dp = std::cos(0.5 * (alpha - beta));
  double dq = std::sin(0.5 * (alpha + beta));
  if (std::abs(dp) < 1e-12 || std::abs(dq) < 1e-12)
    throw Error(ErrorCode::DegenerateAngles, "degenerate multiplier formula");
  return {std::cos(0.5 * (alpha + beta)) / dp,
          -std::sin(0.5 * (alpha - beta)) / dq};
}

Eigen::Matrix<double, 2, 4> vertex_constraint_matrix(const VertexGeometry& g) {
  Eigen::Matrix<double, 2, 4> m;
  for (int i = 0; i < 4; ++i) {
    m(0, i) = std::cos(g.theta[i]);
    m(1, i) = std::sin(g.theta[i]);
  }
  return m;
}

double vertex_closure_residual(const VertexGeometry& g,
                               const Eigen::Vector4d& rho) {
  return identity_distance(closure_product(g, rho));
}

std::vector<LocalMode> local_modes(const VertexGeometry& g) {
  if (g.doubly_degenerate())
    throw Error(ErrorCode::NotRigidlyFoldable,
                "both opposite crease pairs are collinear");

  Eigen::Matrix<double, 2, 4> m = vertex_constraint_matrix(g);
  Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> svd(m, Eigen::ComputeFullV);
  if (svd.singularValues()[1] < 1e-12)
    throw Error(ErrorCode::InternalInconsistency,
                "crease directions do not span the plane");
  Eigen::Vector4d k1 = svd.matrixV().col(2);
  Eigen::Vector4d k2 = svd.matrixV().col(3);

  // restrict the quadratic to the kernel plane and find its zero directions
  double qa = branch_quadratic(g, k1);
  double qc = branch_quadratic(g, k2);
  double qb = 0.5 * (branch_quadratic(g, k1 + k2) - qa - qc);
  double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});
  if (scale < 1e-13)
    throw Error(ErrorCode::NotRigidlyFoldable,
                "degenerate second-order closure form");

  double half_sum = 0.5 * (qa + qc);
  double half_diff = 0.5 * (qa - qc);
  double amp = std::hypot(half_diff, qb);
  if (amp < 1e-13 * scale)
    throw Error(ErrorCode::NotRigidlyFoldable, "no real folding directions");
  double u = -half_sum / amp;
  if (std::abs(u) > 1.0 + 1e-9)
    throw Error(ErrorCode::NotRigidlyFoldable, "no real folding directions");
  double spread = std::acos(std::clamp(u, -1.0, 1.0));
  if (std::min(spread, M_PI - spread) < 1e-7)
    throw Error(ErrorCode::NotRigidlyFoldable,
                "folding directions coincide (double root)");
  double psi = std::atan2(qb, half_diff);
  std::array<double, 2> phis{0.5 * (psi + spread), 0.5 * (psi - spread)};

  std::vector<LocalMode> modes;
  for (double phi : phis) {
    Eigen::Vector4d v =
        canonicalize(std::cos(phi) * k1 + std::sin(phi) * k2);
    LocalMode mode;
    mode.multipliers = v;
    int zeros = 0;
    for (int i = 0; i < 4; ++i)
      if (v[i] == 0.0) ++zeros;
    if (zeros == 0) {
      int negatives = 0, neg_idx = -1, pos_idx = -1;
      for (int i = 0; i < 4; ++i) {
        if (v[i] < 0.0) {
          ++negatives;
          neg_idx = i;
        } else {
          pos_idx = i;
        }
      }
      if (negatives == 1)
        mode.different_crease = neg_idx;
      else if (negatives == 3)
        mode.different_crease = pos_idx;
      else
        throw Error(ErrorCode::InternalInconsistency,
                    "mode tangent lacks a 3+1 parity split");
    } else if (zeros == 2) {
      int j = (v[0] != 0.0) ? 0 : 1;
      if (v[j] == 0.0 || v[(j + 2) % 4] == 0.0 ||
          std::abs(wrap_2pi(g.theta[(j + 2) % 4] - g.theta[j]) - M_PI) >
              tol::kAngle)
        throw Error(ErrorCode::InternalInconsistency,
                    "straight-fold tangent on non-collinear creases");
      mode.straight_fold = true;
    } else {
      throw Error(ErrorCode::InternalInconsistency,
                  "unexpected sparsity in mode tangent");
    }
    modes.push_back(mode);
  }

  if (g.flat_foldable()) {
    FoldingMultipliers fm = folding_multipliers(g.sector[0], g.sector[1]);
    Eigen::Vector4d tp = canonicalize({1.0, -fm.p, 1.0, fm.p});
    Eigen::Vector4d tq = canonicalize({-fm.q, 1.0, fm.q, 1.0});
    for (LocalMode& mode : modes) {
      if ((mode.multipliers - tp).cwiseAbs().maxCoeff() < 1e-7)
        mode.pq = fm.p;
      else if ((mode.multipliers - tq).cwiseAbs().maxCoeff() < 1e-7)
        mode.pq = fm.q;
    }
  }

  std::sort(modes.begin(), modes.end(),
            [](const LocalMode& a, const LocalMode& b) {
              if (a.straight_fold != b.straight_fold) return b.straight_fold;
              return a.different_crease < b.different_crease;
            });
  if (modes.size() != 2)
    throw Error(ErrorCode::InternalInconsistency, "expected exactly two modes");
  return modes;
}

bool birds_foot_check(const VertexGeometry& g, const std::array<int, 4>& mv) {
  int sum = 0;
  for (int s : mv) {
    if (s != 1 && s != -1) return false;
    sum += s;
  }
  if (sum != 2 && sum != -2) return false;
  for (double s : g.sector)
    if (!(s < M_PI - tol::kAngle)) return false;
  int minority = (sum == 2) ? -1 : 1;
  int different = -1;
  for (int i = 0; i < 4; ++i)
    if (mv[i] == minority) different = i;
  double adjacent = g.sector[(different + 3) % 4] + g.sector[different];
  return adjacent < M_PI - tol::kAngle;
}

double transfer_flat_foldable(double multiplier, double rho_in) {
  if (!(std::abs(rho_in) < M_PI))
    throw Error(ErrorCode::AngleOutOfRange,
                "folding angle must lie in (-pi, pi)");
  return 2.0 * std::atan(multiplier * std::tan(0.5 * rho_in));
}

Eigen::Vector4d transfer_general(const VertexGeometry& g, const LocalMode& mode,
                                 double rho_in, int crease_in) {
  if (crease_in < 0 || crease_in > 3)
    throw Error(ErrorCode::DimensionMismatch, "crease index must be 0..3");
  if (!(std::abs(rho_in) < M_PI))
    throw Error(ErrorCode::AngleOutOfRange,
                "folding angle must lie in (-pi, pi)");
  double m_in = mode.multipliers[crease_in];
  if (m_in == 0.0)
    throw Error(ErrorCode::DegenerateMultiplier,
                "branch does not fold the driving crease");

  if (mode.straight_fold) {
    Eigen::Vector4d rho = Eigen::Vector4d::Zero();
    rho[crease_in] = rho_in;
    rho[(crease_in + 2) % 4] = rho_in;
    return rho;
  }

  Eigen::Vector4d rho = Eigen::Vector4d::Zero();
  double t = 0.0;
  double target = rho_in;
  double sign = (target >= 0.0) ? 1.0 : -1.0;
  double step = tol::kMaxContinuationStep;
  int shrinks = 0;
  while (std::abs(target - t) > 1e-15) {
    double want = t + sign * std::min(step, std::abs(target - t));
    Eigen::Vector4d guess;
    if (std::abs(t) < 1e-12) {
      double w = std::tan(0.5 * want) / m_in;
      for (int i = 0; i < 4; ++i)
        guess[i] = 2.0 * std::atan(mode.multipliers[i] * w);
    } else {
      double ratio = std::tan(0.5 * want) / std::tan(0.5 * t);
      for (int i = 0; i < 4; ++i)
        guess[i] = 2.0 * std::atan(std::tan(0.5 * rho[i]) * ratio);
    }
    std::optional<Eigen::Vector4d> sol =
        newton_solve(g, guess, crease_in, want);
    if (sol) {
      rho = *sol;
      t = want;
      shrinks = 0;
      step = std::min(step * 2.0, tol::kMaxContinuationStep);
    } else {
      step *= 0.5;
      if (++shrinks >= tol::kMaxStepShrinks || step < 1e-12)
        throw Error(ErrorCode::BranchExhausted,
                    "fold limit reached before requested angle");
    }
  }
  if (vertex_closure_residual(g, rho) > tol::kNewtonAccept)
    throw Error(ErrorCode::NoConvergence, "closure residual above tolerance");
  return rho;
}

}  // namespace origami
