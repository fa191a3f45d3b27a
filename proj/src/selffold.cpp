#include "origami/selffold.hpp"

#include <cmath>

#include "origami/errors.hpp"
#include "origami/vertex.hpp"

namespace origami {

namespace {

Eigen::MatrixXd column_stack(const std::vector<Eigen::VectorXd>& vs) {
  Eigen::MatrixXd m(vs.empty() ? 0 : vs[0].size(), vs.size());
  for (size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != m.rows())
      throw Error(ErrorCode::DimensionMismatch,
                  "spanning vectors of unequal length");
    m.col(i) = vs[i];
  }
  return m;
}

int span_rank(const Eigen::MatrixXd& m) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  double cutoff = tol::kSvdRelCutoff * sv[0];
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return rank;
}

Eigen::VectorXd outside_component(const std::vector<Eigen::VectorXd>& spanning,
                                  const Eigen::VectorXd& direction) {
  double dn = direction.norm();
  if (!(dn > 0))
    throw Error(ErrorCode::DimensionMismatch, "zero direction vector");
  Eigen::VectorXd d = direction / dn;
  if (spanning.empty()) return d;
  Eigen::MatrixXd m = column_stack(spanning);
  if (m.rows() != d.size())
    throw Error(ErrorCode::DimensionMismatch,
                "direction length differs from spanning vectors");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double cutoff = tol::kSvdRelCutoff * sv[0];
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  Eigen::MatrixXd basis = svd.matrixU().leftCols(rank);
  return d - basis * (basis.transpose() * d);
}

}  // namespace

SpanCheck span_membership(const std::vector<Eigen::VectorXd>& spanning,
                          const Eigen::VectorXd& direction) {
  Eigen::VectorXd out = outside_component(spanning, direction);
  SpanCheck sc;
  sc.residual = out.norm();
  sc.in_span = sc.residual < tol::kInSpan;
  return sc;
}

DrivingForce synthesize_driving_force(
    const std::vector<Eigen::VectorXd>& surrounding,
    const Eigen::VectorXd& target) {
  Eigen::VectorXd out = outside_component(surrounding, target);
  double rn = out.norm();
  if (rn < tol::kInSpan)
    throw Error(ErrorCode::NotUniquelySelfFoldable,
                "target tangent lies in the span of the surrounding branches");
  DrivingForce f;
  f.torque = out / rn;
  f.forward_force_flat = f.torque.dot(target.normalized());
  f.max_surrounding_overlap = 0.0;
  for (const Eigen::VectorXd& s : surrounding)
    f.max_surrounding_overlap =
        std::max(f.max_surrounding_overlap,
                 std::abs(f.torque.dot(s)) / s.norm());
  if (f.max_surrounding_overlap > tol::kPerp)
    throw Error(ErrorCode::InternalInconsistency,
                "synthesized torque leaks work into a surrounding branch");
  return f;
}

Analysis analyze(const CreasePattern& cp, int target_mode) {
  Analysis out;
  out.pattern_class = classify_pattern(cp);
  out.modes = enumerate_modes(cp);
  if (out.modes.empty())
    throw Error(ErrorCode::NoModes, "pattern has no folding branch");
  if (target_mode < 0 ||
      target_mode >= static_cast<int>(out.modes.size()))
    throw Error(ErrorCode::DimensionMismatch, "target mode index out of range");
  out.target_mode = target_mode;
  out.tangent_dim = tangent_space_dim(cp);

  const Eigen::VectorXd& target = out.modes[target_mode].tangent;
  auto valid = valid_tangents_flat(out.modes);
  auto surrounding = surrounding_tangents(valid, target);
  out.surrounding_span_dim = span_rank(column_stack(surrounding));
  SpanCheck sc = span_membership(surrounding, target);
  out.span_residual = sc.residual;
  out.uniquely_self_foldable = !sc.in_span;
  if (out.uniquely_self_foldable) {
    out.force = synthesize_driving_force(surrounding, target);
    // a unique target contributes a direction outside the surrounding span,
    // and both live inside the first-order tangent space
    if (out.tangent_dim < out.surrounding_span_dim + 1)
      throw Error(ErrorCode::InternalInconsistency,
                  "unique target exceeds the tangent space dimension");
  }

  // cross check against the known behavior of large monohedral grids
  if (cp.rows >= 3 && cp.cols >= 3 &&
      out.pattern_class != PatternClass::Unsupported) {
    bool pleat_free = true;
    for (int v : cp.interior)
      if (vertex_star(cp, v).geom.has_collinear_pair()) pleat_free = false;
    bool expected = false;
    bool applicable = false;
    switch (out.pattern_class) {
      case PatternClass::MiuraLike:
      case PatternClass::ChickenWireLike:
        expected = false;
        applicable = true;
        break;
      case PatternClass::GenericFlatFoldable:
      case PatternClass::GenericNonFlatFoldable:
        expected = true;
        applicable = pleat_free;
        break;
      default:
        break;
    }
    if (applicable && expected != out.uniquely_self_foldable)
      throw Error(ErrorCode::InternalInconsistency,
                  "verdict contradicts the known grid classification");
  }
  return out;
}

}  // namespace origami
