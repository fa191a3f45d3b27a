#include "origami/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>

#include <json.hpp>

#include "origami/errors.hpp"

namespace origami {

namespace {

using ordered_json = nlohmann::ordered_json;

double clean(double x) { return x == 0.0 ? 0.0 : x; }

std::vector<std::array<int, 2>> sorted_boundary(const CreasePattern& cp) {
  std::vector<std::array<int, 2>> edges;
  edges.reserve(cp.boundary_edges.size());
  for (const auto& e : cp.boundary_edges) {
    auto mm = std::minmax(e[0], e[1]);
    edges.push_back({mm.first, mm.second});
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", clean(x));
  return buf;
}

}  // namespace

std::string export_fold(const CreasePattern& cp, const GlobalMode* mode,
                        const Eigen::VectorXd* rho) {
  int n = cp.crease_count();
  if (mode && mode->tangent.size() != n)
    throw Error(ErrorCode::DimensionMismatch,
                "mode does not belong to this pattern");
  if (rho && rho->size() != n)
    throw Error(ErrorCode::DimensionMismatch,
                "angle vector length must match crease count");

  ordered_json j;
  j["file_spec"] = 1.1;
  j["file_creator"] = "origami-selffold";
  j["file_classes"] = {"singleModel"};
  j["frame_classes"] = {rho ? "foldedForm" : "creasePattern"};
  j["frame_attributes"] = {rho ? "3D" : "2D"};

  ordered_json coords = ordered_json::array();
  if (rho) {
    FoldedState st = reconstruct_3d(cp, *rho);
    for (const auto& v : st.vertices)
      coords.push_back({clean(v.x()), clean(v.y()), clean(v.z())});
  } else {
    for (const auto& v : cp.vertices)
      coords.push_back({clean(v.x()), clean(v.y())});
  }
  j["vertices_coords"] = std::move(coords);

  ordered_json edges = ordered_json::array();
  ordered_json assign = ordered_json::array();
  ordered_json angles = ordered_json::array();
  for (int c = 0; c < n; ++c) {
    edges.push_back({cp.creases[c].v0, cp.creases[c].v1});
    int sign = 0;
    if (mode)
      sign = mode->mv[c];
    else if (rho)
      sign = ((*rho)[c] > 0.0) ? 1 : ((*rho)[c] < 0.0 ? -1 : 0);
    assign.push_back(sign > 0 ? "V" : (sign < 0 ? "M" : "F"));
    angles.push_back(rho ? clean(rad2deg((*rho)[c])) : 0.0);
  }
  for (const auto& e : sorted_boundary(cp)) {
    edges.push_back({e[0], e[1]});
    assign.push_back("B");
    angles.push_back(0.0);
  }
  j["edges_vertices"] = std::move(edges);
  j["edges_assignment"] = std::move(assign);
  j["edges_foldAngle"] = std::move(angles);

  ordered_json faces = ordered_json::array();
  for (const auto& f : cp.faces) faces.push_back({f[0], f[1], f[2], f[3]});
  j["faces_vertices"] = std::move(faces);
  return j.dump(2) + "\n";
}

CreasePattern import_fold(const std::string& document) {
  ordered_json j;
  try {
    j = ordered_json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, e.what());
  }
  if (!j.is_object())
    throw Error(ErrorCode::MalformedDocument, "top level must be an object");
  for (const char* key : {"vertices_coords", "edges_vertices",
                          "faces_vertices"})
    if (!j.contains(key) || !j[key].is_array())
      throw Error(ErrorCode::MalformedDocument,
                  std::string("missing array ") + key);

  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 4>> faces;
  std::vector<std::array<int, 2>> file_edges;
  std::vector<std::string> file_assign;
  try {
    for (const auto& row : j["vertices_coords"]) {
      if (!row.is_array() || row.size() < 2 || row.size() > 3)
        throw Error(ErrorCode::MalformedDocument,
                    "vertex coordinates must be 2D or 3D");
      if (row.size() == 3 && std::abs(row[2].get<double>()) > 1e-9)
        throw Error(ErrorCode::MalformedDocument,
                    "only flat frames can be imported");
      vertices.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    for (const auto& row : j["faces_vertices"]) {
      if (!row.is_array() || row.size() != 4)
        throw Error(ErrorCode::NonQuadFace, "faces must be quadrilaterals");
      faces.push_back({row[0].get<int>(), row[1].get<int>(),
                       row[2].get<int>(), row[3].get<int>()});
    }
    for (const auto& row : j["edges_vertices"]) {
      if (!row.is_array() || row.size() != 2)
        throw Error(ErrorCode::MalformedDocument, "edges must be pairs");
      int a = row[0].get<int>(), b = row[1].get<int>();
      file_edges.push_back({std::min(a, b), std::max(a, b)});
    }
    if (j.contains("edges_assignment")) {
      if (!j["edges_assignment"].is_array() ||
          j["edges_assignment"].size() != file_edges.size())
        throw Error(ErrorCode::MalformedDocument,
                    "edge assignment list length mismatch");
      for (const auto& a : j["edges_assignment"])
        file_assign.push_back(a.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, e.what());
  }

  int nv = static_cast<int>(vertices.size());
  for (const auto& f : faces)
    for (int v : f)
      if (v < 0 || v >= nv)
        throw Error(ErrorCode::MalformedDocument, "face vertex out of range");
  for (const auto& e : file_edges)
    if (e[0] < 0 || e[1] >= nv || e[0] == e[1])
      throw Error(ErrorCode::MalformedDocument, "edge vertex out of range");

  CreasePattern cp = finalize_pattern(std::move(vertices), std::move(faces));

  // the file's edge list must match the face-derived topology
  std::set<std::array<int, 2>> derived;
  std::set<std::array<int, 2>> derived_boundary;
  for (const auto& c : cp.creases) {
    auto mm = std::minmax(c.v0, c.v1);
    derived.insert({mm.first, mm.second});
  }
  for (const auto& e : sorted_boundary(cp)) {
    derived.insert(e);
    derived_boundary.insert(e);
  }
  std::set<std::array<int, 2>> listed(file_edges.begin(), file_edges.end());
  if (listed != derived)
    throw Error(ErrorCode::MalformedDocument,
                "edge list disagrees with face topology");
  for (size_t i = 0; i < file_assign.size(); ++i) {
    const std::string& a = file_assign[i];
    bool boundary = derived_boundary.count(file_edges[i]) > 0;
    if (a == "B") {
      if (!boundary)
        throw Error(ErrorCode::MalformedDocument,
                    "interior edge assigned as boundary");
    } else if (a == "M" || a == "V" || a == "F" || a == "U") {
      if (boundary)
        throw Error(ErrorCode::MalformedDocument,
                    "boundary edge assigned as crease");
    } else {
      throw Error(ErrorCode::MalformedDocument,
                  "unknown edge assignment " + a);
    }
  }
  return cp;
}

std::string export_svg(const CreasePattern& cp, const GlobalMode* mode) {
  if (mode && mode->tangent.size() != cp.crease_count())
    throw Error(ErrorCode::DimensionMismatch,
                "mode does not belong to this pattern");
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& v : cp.vertices) {
    xmin = std::min(xmin, v.x());
    xmax = std::max(xmax, v.x());
    ymin = std::min(ymin, v.y());
    ymax = std::max(ymax, v.y());
  }
  double diam = std::hypot(xmax - xmin, ymax - ymin);
  if (!(diam > 0)) diam = 1.0;
  double margin = 0.05 * diam;
  double width = (xmax - xmin) + 2 * margin;
  double height = (ymax - ymin) + 2 * margin;
  // flip y so the drawing matches the mathematical orientation
  auto px = [&](const Eigen::Vector2d& v) { return v.x() - xmin + margin; };
  auto py = [&](const Eigen::Vector2d& v) { return ymax - v.y() + margin; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt6(width) +
         "\" height=\"" + fmt6(height) + "\" viewBox=\"0 0 " + fmt6(width) +
         " " + fmt6(height) + "\">\n";
  out += "<g fill=\"none\" stroke-linecap=\"round\">\n";

  auto line = [&](int a, int b, const std::string& style) {
    out += "<line x1=\"" + fmt6(px(cp.vertices[a])) + "\" y1=\"" +
           fmt6(py(cp.vertices[a])) + "\" x2=\"" + fmt6(px(cp.vertices[b])) +
           "\" y2=\"" + fmt6(py(cp.vertices[b])) + "\" " + style + "/>\n";
  };
  std::string boundary_style =
      "stroke=\"#000000\" stroke-width=\"" + fmt6(0.012 * diam) + "\"";
  std::string mountain_style =
      "stroke=\"#d62728\" stroke-width=\"" + fmt6(0.008 * diam) + "\"";
  std::string valley_style = "stroke=\"#1f77b4\" stroke-width=\"" +
                             fmt6(0.008 * diam) + "\" stroke-dasharray=\"" +
                             fmt6(0.03 * diam) + " " + fmt6(0.018 * diam) +
                             "\"";
  std::string flat_style =
      "stroke=\"#9e9e9e\" stroke-width=\"" + fmt6(0.008 * diam) + "\"";

  for (const auto& e : sorted_boundary(cp)) line(e[0], e[1], boundary_style);
  for (int c = 0; c < cp.crease_count(); ++c) {
    int sign = mode ? mode->mv[c] : 0;
    line(cp.creases[c].v0, cp.creases[c].v1,
         sign > 0 ? valley_style : (sign < 0 ? mountain_style : flat_style));
  }
  out += "</g>\n</svg>\n";
  return out;
}

double report_tolerance() {
  const char* env = std::getenv("ORIGAMI_SELFFOLD_TOLERANCE");
  if (env && *env) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end && *end == '\0' && v > 0.0) return v;
  }
  return 1e-9;
}

std::string mv_string(const std::vector<int>& mv) {
  std::string s;
  s.reserve(mv.size());
  for (int sign : mv) s += sign > 0 ? 'V' : (sign < 0 ? 'M' : 'F');
  return s;
}

PathSummary summarize_path(const CreasePattern& cp, const FoldPath& path,
                           const Eigen::VectorXd* torque) {
  PathSummary s;
  s.driver_crease = path.driver_crease;
  s.steps = static_cast<int>(path.points.size());
  s.driver_max_deg = rad2deg(path.driver_values.back());
  s.arc_length = path.arc_length;
  for (const auto& pt : path.points)
    s.max_closure_residual =
        std::max(s.max_closure_residual, pattern_closure_residual(cp, pt));
  if (torque) {
    auto forces = forward_force_along_path(path, *torque);
    s.has_force = true;
    s.min_forward_force = *std::min_element(forces.begin(), forces.end());
    s.max_forward_force = *std::max_element(forces.begin(), forces.end());
  }
  return s;
}

std::string report_json(const CreasePattern& cp,
                        const std::vector<Analysis>& verdicts,
                        const std::vector<std::optional<PathSummary>>& paths) {
  if (verdicts.empty())
    throw Error(ErrorCode::DimensionMismatch, "report needs a verdict");
  if (!paths.empty() && paths.size() != verdicts.size())
    throw Error(ErrorCode::DimensionMismatch,
                "path list must align with verdicts");

  ordered_json j;
  j["tool"] = {{"name", "origami-selffold"}, {"version", "0.1.0"}};

  ordered_json pat;
  pat["class"] = pattern_class_name(verdicts[0].pattern_class);
  pat["rows"] = cp.rows;
  pat["cols"] = cp.cols;
  pat["n_vertices"] = cp.vertices.size();
  pat["n_creases"] = cp.crease_count();
  pat["n_faces"] = cp.faces.size();
  if (cp.tile) {
    ordered_json angles = ordered_json::array();
    for (double a : cp.tile->angles()) angles.push_back(clean(rad2deg(a)));
    pat["tile_angles_deg"] = std::move(angles);
  } else {
    pat["tile_angles_deg"] = nullptr;
  }
  if (auto pq = pattern_multipliers(cp)) {
    pat["p"] = clean(pq->p);
    pat["q"] = clean(pq->q);
  } else {
    pat["p"] = nullptr;
    pat["q"] = nullptr;
  }
  j["pattern"] = std::move(pat);

  j["tolerances"] = {{"report", report_tolerance()},
                     {"in_span", tol::kInSpan},
                     {"perpendicularity", tol::kPerp},
                     {"tangent_match", tol::kTangentMatch},
                     {"svd_relative_cutoff", tol::kSvdRelCutoff},
                     {"kernel_residual", tol::kKernelResidual},
                     {"loop_product", tol::kLoopProduct},
                     {"newton_converge", tol::kNewtonConverge},
                     {"newton_accept", tol::kNewtonAccept},
                     {"path_closure", tol::kPathClosure},
                     {"placement", tol::kPlacement},
                     {"rigidity", tol::kRigidity}};

  const auto& modes = verdicts[0].modes;
  j["mode_count"] = modes.size();
  ordered_json catalog = ordered_json::array();
  for (size_t m = 0; m < modes.size(); ++m) {
    ordered_json entry;
    entry["index"] = m + 1;
    entry["vertex_modes"] = modes[m].vertex_modes;
    entry["mv"] = mv_string(modes[m].mv);
    entry["family_dim"] = modes[m].family_dim;
    entry["driver_crease"] = mode_driver_crease(modes[m]);
    ordered_json tangent = ordered_json::array();
    for (int i = 0; i < modes[m].tangent.size(); ++i)
      tangent.push_back(clean(modes[m].tangent[i]));
    entry["tangent"] = std::move(tangent);
    catalog.push_back(std::move(entry));
  }
  j["modes"] = std::move(catalog);

  ordered_json verdict_list = ordered_json::array();
  for (size_t k = 0; k < verdicts.size(); ++k) {
    const Analysis& an = verdicts[k];
    if (an.modes.size() != modes.size())
      throw Error(ErrorCode::InternalInconsistency,
                  "verdicts built from different mode catalogs");
    ordered_json v;
    v["mode"] = an.target_mode + 1;
    v["tangent_space_dim"] = an.tangent_dim;
    v["surrounding_span_dim"] = an.surrounding_span_dim;
    v["span_residual"] = clean(an.span_residual);
    v["uniquely_self_foldable"] = an.uniquely_self_foldable;
    if (an.force) {
      ordered_json torque = ordered_json::array();
      for (int i = 0; i < an.force->torque.size(); ++i)
        torque.push_back(clean(an.force->torque[i]));
      v["driving_force"] = {
          {"torque", std::move(torque)},
          {"forward_force_flat", clean(an.force->forward_force_flat)},
          {"max_surrounding_overlap",
           clean(an.force->max_surrounding_overlap)}};
    } else {
      v["driving_force"] = nullptr;
    }
    if (!paths.empty() && paths[k]) {
      const PathSummary& p = *paths[k];
      ordered_json pj;
      pj["driver_crease"] = p.driver_crease;
      pj["steps"] = p.steps;
      pj["driver_max_deg"] = clean(p.driver_max_deg);
      pj["arc_length"] = clean(p.arc_length);
      pj["max_closure_residual"] = clean(p.max_closure_residual);
      if (p.has_force) {
        pj["min_forward_force"] = clean(p.min_forward_force);
        pj["max_forward_force"] = clean(p.max_forward_force);
      }
      v["path"] = std::move(pj);
    } else {
      v["path"] = nullptr;
    }
    verdict_list.push_back(std::move(v));
  }
  j["verdicts"] = std::move(verdict_list);
  return j.dump(2) + "\n";
}

}  // namespace origami
