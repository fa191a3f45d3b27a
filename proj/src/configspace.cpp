#include "origami/configspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "origami/errors.hpp"

namespace origami {

namespace {

constexpr int kMaxInteriorVertices = 20;

Eigen::VectorXd comb_normalize(Eigen::VectorXd v) {
  double amax = v.cwiseAbs().maxCoeff();
  if (!(amax > 0))
    throw Error(ErrorCode::InternalInconsistency, "zero tangent vector");
  v /= amax;
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= tol::kModeZero) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) < tol::kModeZero) v[i] = 0.0;
  return v;
}

// orthonormal kernel basis columns of m (relative singular value cutoff)
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& m) {
  if (m.rows() == 0)
    return Eigen::MatrixXd::Identity(m.cols(), m.cols());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff = sv.size() ? tol::kSvdRelCutoff * sv[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

// reduced row echelon representatives of a row space (rows assumed O(1))
std::vector<Eigen::VectorXd> rref_rows(Eigen::MatrixXd rows) {
  int k = static_cast<int>(rows.rows());
  int n = static_cast<int>(rows.cols());
  int r = 0;
  for (int col = 0; col < n && r < k; ++col) {
    int pivot = r;
    for (int i = r + 1; i < k; ++i)
      if (std::abs(rows(i, col)) > std::abs(rows(pivot, col))) pivot = i;
    if (std::abs(rows(pivot, col)) < 1e-9) continue;
    rows.row(pivot).swap(rows.row(r));
    rows.row(r) /= rows(r, col);
    for (int i = 0; i < k; ++i)
      if (i != r) rows.row(i) -= rows(i, col) * rows.row(r);
    ++r;
  }
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < k; ++i)
    if (rows.row(i).cwiseAbs().maxCoeff() > 1e-9)
      out.push_back(rows.row(i).transpose());
  return out;
}

std::vector<VertexStar> collect_stars(const CreasePattern& cp) {
  std::vector<VertexStar> stars;
  stars.reserve(cp.interior.size());
  for (int v : cp.interior) stars.push_back(vertex_star(cp, v));
  return stars;
}

Eigen::Vector3d axial_residual(const Eigen::Matrix3d& p) {
  return {0.5 * (p(2, 1) - p(1, 2)), 0.5 * (p(0, 2) - p(2, 0)),
          0.5 * (p(1, 0) - p(0, 1))};
}

Eigen::Matrix3d star_closure(const VertexStar& star,
                             const Eigen::VectorXd& rho) {
  Eigen::Matrix3d p = Eigen::Matrix3d::Identity();
  for (int i = 0; i < 4; ++i)
    p = p * crease_rotation(star.geom.theta[i], rho[star.crease[i]]);
  return p;
}

double stars_closure_residual(const std::vector<VertexStar>& stars,
                              const Eigen::VectorXd& rho) {
  double worst = 0.0;
  for (const VertexStar& s : stars)
    worst = std::max(worst, identity_distance(star_closure(s, rho)));
  return worst;
}

// Gauss-Newton confirmation that a candidate tangent direction really is the
// tangent of a finite branch: pins the candidate's largest crease at
// 5 degrees and solves every vertex closure.
bool newton_confirm(const std::vector<VertexStar>& stars,
                    const Eigen::VectorXd& rep, int n) {
  int dc = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(rep[i]) > std::abs(rep[dc])) dc = i;
  double target = rep[dc] * deg2rad(5.0);
  double w = std::tan(0.5 * target) / rep[dc];
  Eigen::VectorXd rho(n);
  for (int i = 0; i < n; ++i) rho[i] = 2.0 * std::atan(rep[i] * w);

  int nv = static_cast<int>(stars.size());
  int m = 3 * nv + 1;
  auto residual = [&](const Eigen::VectorXd& r) {
    Eigen::VectorXd out(m);
    for (int v = 0; v < nv; ++v)
      out.segment<3>(3 * v) = axial_residual(star_closure(stars[v], r));
    out[m - 1] = r[dc] - target;
    return out;
  };

  bool converged = false;
  for (int iter = 0; iter < tol::kNewtonMaxIter; ++iter) {
    if (stars_closure_residual(stars, rho) < tol::kNewtonConverge &&
        std::abs(rho[dc] - target) < tol::kNewtonConverge) {
      converged = true;
      break;
    }
    Eigen::VectorXd r = residual(rho);
    Eigen::MatrixXd jac(m, n);
    const double h = 1e-7;
    for (int c = 0; c < n; ++c) {
      Eigen::VectorXd hi = rho, lo = rho;
      hi[c] += h;
      lo[c] -= h;
      jac.col(c) = (residual(hi) - residual(lo)) / (2.0 * h);
    }
    Eigen::VectorXd delta = jac.colPivHouseholderQr().solve(r);
    if (!delta.allFinite()) return false;
    double dmax = delta.cwiseAbs().maxCoeff();
    if (dmax > 0.5) delta *= 0.5 / dmax;
    rho -= delta;
    if (rho.cwiseAbs().maxCoeff() >= M_PI - tol::kAngle) return false;
  }
  if (!converged && stars_closure_residual(stars, rho) > tol::kNewtonAccept)
    return false;

  // the converged point must lie along the candidate direction
  Eigen::VectorXd th(n);
  for (int i = 0; i < n; ++i) th[i] = std::tan(0.5 * rho[i]);
  double tn = th.norm(), rn = rep.norm();
  if (!(tn > 0) || !(rn > 0)) return false;
  double align = std::abs(th.dot(rep)) / (tn * rn);
  return align > 1.0 - 1e-6;
}

std::vector<int> mv_of(const Eigen::VectorXd& t) {
  std::vector<int> mv(t.size());
  for (int i = 0; i < t.size(); ++i)
    mv[i] = (t[i] > 0.0) ? 1 : (t[i] < 0.0 ? -1 : 0);
  return mv;
}

int zero_count(const Eigen::VectorXd& t) {
  int z = 0;
  for (int i = 0; i < t.size(); ++i)
    if (t[i] == 0.0) ++z;
  return z;
}

void sort_catalog(std::vector<GlobalMode>& modes) {
  std::sort(modes.begin(), modes.end(),
            [](const GlobalMode& a, const GlobalMode& b) {
              int za = zero_count(a.tangent), zb = zero_count(b.tangent);
              if (za != zb) return za < zb;
              for (int i = 0; i < a.tangent.size(); ++i) {
                long long qa = std::llround(a.tangent[i] * 1e9);
                long long qb = std::llround(b.tangent[i] * 1e9);
                if (qa != qb) return qa > qb;
              }
              return false;
            });
}

int find_known(const std::vector<GlobalMode>& modes,
               const Eigen::VectorXd& tangent) {
  for (size_t i = 0; i < modes.size(); ++i)
    if ((modes[i].tangent - tangent).cwiseAbs().maxCoeff() < 1e-6)
      return static_cast<int>(i);
  return -1;
}

}  // namespace

Eigen::MatrixXd flat_constraint_matrix(const CreasePattern& cp) {
  int nv = static_cast<int>(cp.interior.size());
  int n = cp.crease_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * nv, n);
  for (int k = 0; k < nv; ++k) {
    VertexStar star = vertex_star(cp, cp.interior[k]);
    for (int i = 0; i < 4; ++i) {
      a(2 * k, star.crease[i]) += std::cos(star.geom.theta[i]);
      a(2 * k + 1, star.crease[i]) += std::sin(star.geom.theta[i]);
    }
  }
  return a;
}

int tangent_space_dim(const CreasePattern& cp) {
  int n = cp.crease_count();
  if (n == 0) return 0;
  if (cp.interior.empty()) return n;
  Eigen::MatrixXd a = flat_constraint_matrix(cp);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  double cutoff = tol::kSvdRelCutoff * sv[0];
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff / tol::kSvdGuardBand && sv[i] < cutoff * tol::kSvdGuardBand)
      throw Error(ErrorCode::RankDeficiencyAmbiguous,
                  "singular value inside the rank guard band");
    if (sv[i] > cutoff) ++rank;
  }
  return n - rank;
}

double pattern_closure_residual(const CreasePattern& cp,
                                const Eigen::VectorXd& rho) {
  if (rho.size() != cp.crease_count())
    throw Error(ErrorCode::DimensionMismatch,
                "angle vector length must match crease count");
  return stars_closure_residual(collect_stars(cp), rho);
}

std::vector<GlobalMode> enumerate_modes_general(const CreasePattern& cp) {
  int nv = static_cast<int>(cp.interior.size());
  if (nv > kMaxInteriorVertices)
    throw Error(ErrorCode::TooManyVertices,
                "mode enumeration supports at most 20 interior vertices");
  int n = cp.crease_count();
  if (n == 0) return {};

  std::vector<VertexStar> stars = collect_stars(cp);
  std::vector<std::array<LocalMode, 2>> vmodes;
  for (const VertexStar& s : stars) {
    auto lm = local_modes(s.geom);
    vmodes.push_back({lm[0], lm[1]});
  }

  Eigen::MatrixXd a = flat_constraint_matrix(cp);
  Eigen::MatrixXd nullspace = kernel_basis(a);
  int m = static_cast<int>(nullspace.cols());
  if (m == 0) return {};

  // restriction of the kernel to each star, and the orthogonal complement of
  // each local mode inside that star
  std::vector<Eigen::MatrixXd> star_rows(nv);
  for (int v = 0; v < nv; ++v) {
    Eigen::MatrixXd r(4, m);
    for (int i = 0; i < 4; ++i) r.row(i) = nullspace.row(stars[v].crease[i]);
    star_rows[v] = r;
  }
  std::vector<std::array<Eigen::MatrixXd, 2>> constraint(nv);
  for (int v = 0; v < nv; ++v) {
    for (int b = 0; b < 2; ++b) {
      Eigen::Vector4d u = vmodes[v][b].multipliers;
      Eigen::HouseholderQR<Eigen::Matrix<double, 4, 1>> qr(u);
      Eigen::Matrix4d q = qr.householderQ();
      constraint[v][b] = q.rightCols(3).transpose() * star_rows[v];
    }
  }

  std::vector<GlobalMode> catalog;
  for (int mask = 0; mask < (1 << nv); ++mask) {
    Eigen::MatrixXd g(3 * nv, m);
    for (int v = 0; v < nv; ++v)
      g.middleRows(3 * v, 3) = constraint[v][(mask >> v) & 1];
    Eigen::MatrixXd y = kernel_basis(g);
    if (y.cols() == 0) continue;
    Eigen::MatrixXd k = nullspace * y;

    std::vector<Eigen::VectorXd> reps;
    if (k.cols() == 1)
      reps.push_back(k.col(0));
    else
      reps = rref_rows(k.transpose());

    for (const Eigen::VectorXd& raw : reps) {
      Eigen::VectorXd tangent = comb_normalize(raw);
      int dup = find_known(catalog, tangent);
      if (dup >= 0) {
        // same line rediscovered inside a larger linear family
        catalog[dup].family_dim =
            std::max(catalog[dup].family_dim, static_cast<int>(k.cols()));
        continue;
      }
      if ((a * tangent).norm() > tol::kKernelResidual * tangent.norm())
        throw Error(ErrorCode::InternalInconsistency,
                    "candidate tangent escapes the constraint kernel");
      if (!newton_confirm(stars, tangent, n)) continue;
      GlobalMode gm;
      gm.tangent = tangent;
      gm.family_dim = static_cast<int>(k.cols());
      gm.mv = mv_of(tangent);
      gm.vertex_modes.resize(nv);
      for (int v = 0; v < nv; ++v) gm.vertex_modes[v] = (mask >> v) & 1;
      catalog.push_back(std::move(gm));
    }
  }
  sort_catalog(catalog);
  return catalog;
}

std::vector<GlobalMode> enumerate_modes_flat_foldable(const CreasePattern& cp) {
  int nv = static_cast<int>(cp.interior.size());
  if (nv == 0) return enumerate_modes_general(cp);
  if (nv > kMaxInteriorVertices)
    throw Error(ErrorCode::TooManyVertices,
                "mode enumeration supports at most 20 interior vertices");
  int n = cp.crease_count();

  std::vector<VertexStar> stars = collect_stars(cp);
  std::vector<std::array<LocalMode, 2>> vmodes;
  for (const VertexStar& s : stars) {
    if (!s.geom.flat_foldable())
      throw Error(ErrorCode::NotFlatFoldable,
                  "vertex violates the alternating sector sum condition");
    auto lm = local_modes(s.geom);
    for (const LocalMode& mode : lm)
      for (int i = 0; i < 4; ++i)
        if (mode.multipliers[i] == 0.0)
          throw Error(ErrorCode::DegenerateMultiplier,
                      "local mode with vanishing multiplier; "
                      "use the general enumerator");
    vmodes.push_back({lm[0], lm[1]});
  }

  std::map<int, int> vertex_slot;
  for (int v = 0; v < nv; ++v) vertex_slot[cp.interior[v]] = v;
  std::map<std::pair<int, int>, int> crease_of_edge;
  for (int c = 0; c < n; ++c) {
    auto key = std::minmax(cp.creases[c].v0, cp.creases[c].v1);
    crease_of_edge[{key.first, key.second}] = c;
  }
  auto star_pos = [&](int slot, int crease) {
    for (int i = 0; i < 4; ++i)
      if (stars[slot].crease[i] == crease) return i;
    throw Error(ErrorCode::InternalInconsistency, "crease missing from star");
  };

  // independent loops: faces whose four corners are all interior
  struct Loop {
    std::array<int, 4> slot;
    std::array<int, 4> prev_pos;
    std::array<int, 4> next_pos;
  };
  std::vector<Loop> loops;
  for (const auto& f : cp.faces) {
    bool all_interior = true;
    for (int v : f)
      if (!cp.is_interior(v)) all_interior = false;
    if (!all_interior) continue;
    Loop loop{};
    for (int i = 0; i < 4; ++i) {
      int v = f[i];
      auto prev = std::minmax(f[(i + 3) % 4], v);
      auto next = std::minmax(v, f[(i + 1) % 4]);
      loop.slot[i] = vertex_slot.at(v);
      loop.prev_pos[i] =
          star_pos(loop.slot[i], crease_of_edge.at({prev.first, prev.second}));
      loop.next_pos[i] =
          star_pos(loop.slot[i], crease_of_edge.at({next.first, next.second}));
    }
    loops.push_back(loop);
  }

  Eigen::MatrixXd a = flat_constraint_matrix(cp);
  std::vector<GlobalMode> catalog;
  for (int mask = 0; mask < (1 << nv); ++mask) {
    bool ok = true;
    for (const Loop& loop : loops) {
      double prod = 1.0;
      for (int i = 0; i < 4; ++i) {
        const Eigen::Vector4d& t =
            vmodes[loop.slot[i]][(mask >> loop.slot[i]) & 1].multipliers;
        prod *= t[loop.prev_pos[i]] / t[loop.next_pos[i]];
      }
      if (std::abs(prod - 1.0) > tol::kLoopProduct) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    // propagate tan-half multipliers across vertices, seeded at crease 0
    Eigen::VectorXd mult = Eigen::VectorXd::Constant(n, 0.0);
    std::vector<char> known(n, 0);
    mult[0] = 1.0;
    known[0] = 1;
    for (int pass = 0; pass < nv + 1; ++pass) {
      bool progress = false;
      for (int v = 0; v < nv; ++v) {
        const Eigen::Vector4d& t =
            vmodes[v][(mask >> v) & 1].multipliers;
        int anchor = -1;
        for (int i = 0; i < 4; ++i)
          if (known[stars[v].crease[i]]) {
            anchor = i;
            break;
          }
        if (anchor < 0) continue;
        double scale = mult[stars[v].crease[anchor]] / t[anchor];
        for (int i = 0; i < 4; ++i) {
          int c = stars[v].crease[i];
          double val = t[i] * scale;
          if (known[c]) {
            if (std::abs(mult[c] - val) >
                tol::kConsistency * std::max(1.0, std::abs(val)))
              throw Error(ErrorCode::InternalInconsistency,
                          "multiplier propagation disagreement");
          } else {
            mult[c] = val;
            known[c] = 1;
            progress = true;
          }
        }
      }
      if (!progress) break;
    }
    for (int c = 0; c < n; ++c)
      if (!known[c])
        throw Error(ErrorCode::InternalInconsistency,
                    "crease unreachable during multiplier propagation");

    Eigen::VectorXd tangent = comb_normalize(mult);
    if ((a * tangent).norm() > tol::kKernelResidual * tangent.norm())
      throw Error(ErrorCode::InternalInconsistency,
                  "loop-product tangent escapes the constraint kernel");
    // exact finite fold spot check at a 5 degree scale
    double w = std::tan(deg2rad(2.5));
    Eigen::VectorXd rho(n);
    for (int c = 0; c < n; ++c) rho[c] = 2.0 * std::atan(tangent[c] * w);
    if (stars_closure_residual(stars, rho) > tol::kNewtonAccept)
      throw Error(ErrorCode::InternalInconsistency,
                  "loop-product mode violates finite closure");

    if (find_known(catalog, tangent) >= 0) continue;
    GlobalMode gm;
    gm.tangent = tangent;
    gm.family_dim = 1;
    gm.mv = mv_of(tangent);
    gm.vertex_modes.resize(nv);
    for (int v = 0; v < nv; ++v) gm.vertex_modes[v] = (mask >> v) & 1;
    catalog.push_back(std::move(gm));
  }
  sort_catalog(catalog);
  return catalog;
}

std::vector<GlobalMode> enumerate_modes(const CreasePattern& cp) {
  if (cp.interior.empty()) return enumerate_modes_general(cp);
  bool loop_products_apply = true;
  for (int v : cp.interior) {
    VertexStar s = vertex_star(cp, v);
    if (!s.geom.flat_foldable()) {
      loop_products_apply = false;
      break;
    }
    for (const LocalMode& mode : local_modes(s.geom))
      for (int i = 0; i < 4; ++i)
        if (mode.multipliers[i] == 0.0) loop_products_apply = false;
  }
  return loop_products_apply ? enumerate_modes_flat_foldable(cp)
                             : enumerate_modes_general(cp);
}

std::vector<Eigen::VectorXd> valid_tangents_flat(
    const std::vector<GlobalMode>& modes) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(2 * modes.size());
  for (const GlobalMode& m : modes) {
    Eigen::VectorXd u = m.tangent.normalized();
    out.push_back(u);
    out.push_back(-u);
  }
  return out;
}

std::vector<Eigen::VectorXd> valid_tangents_flat(const CreasePattern& cp) {
  return valid_tangents_flat(enumerate_modes(cp));
}

std::vector<Eigen::VectorXd> surrounding_tangents(
    const std::vector<Eigen::VectorXd>& valid,
    const Eigen::VectorXd& direction) {
  double dn = direction.norm();
  if (!(dn > 0))
    throw Error(ErrorCode::DimensionMismatch, "zero direction vector");
  Eigen::VectorXd d = direction / dn;
  std::vector<Eigen::VectorXd> out;
  bool found = false;
  for (const Eigen::VectorXd& v : valid) {
    if (v.size() != d.size())
      throw Error(ErrorCode::DimensionMismatch,
                  "tangent dimensions disagree");
    double close = std::min((v - d).norm(), (v + d).norm());
    if (close < tol::kTangentMatch)
      found = true;
    else
      out.push_back(v);
  }
  if (!found)
    throw Error(ErrorCode::DirectionNotValid,
                "direction does not match any branch tangent");
  return out;
}

}  // namespace origami
