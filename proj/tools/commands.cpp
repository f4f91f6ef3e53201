#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "cpack/analysis.hpp"
#include "cpack/error.hpp"
#include "cpack/graph.hpp"
#include "cpack/io.hpp"
#include "cpack/layout.hpp"

namespace cpack::cli {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::invalid_input, "cannot write '" + path + "'");
}

struct Options {
  std::string input;
  std::string second;
  std::string out;
  std::string map;
  std::string graph;
  std::string fill;
  std::vector<std::string> pins;
  double tol = 1e-9;
  double pack_tol = kDefaultLayoutTol;
  double angle_tol_deg = 1e-4;
  double rank_tol = kDefaultRankTol;
  long max_iter = kDefaultMaxSweeps;
  bool stamp = false;
};

// A primary document goes to --out when given; otherwise it is the standard
// output and the report moves to standard error.
struct Sink {
  std::ostream& out;
  std::ostream& err;
  const Options& opt;

  std::ostream& report() { return opt.out.empty() ? err : out; }
  void document(const std::string& text) {
    if (opt.out.empty()) {
      out << text;
    } else {
      write_file(opt.out, text);
    }
  }
};

void stamp_line(std::ostream& os, const Options& opt) {
  if (!opt.stamp) return;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  os << "stamp: " << buf << "\n";
}

int cmd_pack(const Options& opt, std::ostream& out, std::ostream& err) {
  const io::GraphDocument doc = io::read_graph(read_file(opt.input));
  const LayoutProblem problem = io::to_layout_problem(doc, opt.pack_tol, opt.max_iter);
  for (const Angle& a : problem.labels()) {
    if (a.radians() > std::numbers::pi / 2.0) {
      err << "warning: " << kObtuseLabelWarning << "\n";
      break;
    }
  }
  const PackResult result = pack(problem);
  Sink sink{out, err, opt};
  sink.document(io::write_disks(result.disks));
  std::ostream& rep = sink.report();
  rep << "command: pack\n";
  stamp_line(rep, opt);
  rep << "status: converged\n"
      << "vertices: " << problem.graph().size() << "\n"
      << "interior: " << problem.interior().size() << "\n"
      << "sweeps: " << result.solution.iterations << "\n"
      << "residual_rad: " << num(result.solution.residual) << "\n"
      << "closure_residual: " << num(result.placement.closure_residual) << "\n"
      << "max_edge_error: " << num(result.placement.max_edge_error) << "\n";
  // already on standard error when the report is there too
  if (!opt.out.empty()) {
    for (const auto& w : result.solution.warnings) rep << "warning: " << w << "\n";
  }
  return kSuccess;
}

int cmd_extract(const Options& opt, std::ostream& out, std::ostream& err) {
  const DiskSet ds = io::read_disks(read_file(opt.input));
  const LabeledContactGraph lg = extract_contact_graph(ds, opt.tol);
  Sink sink{out, err, opt};
  sink.document(io::write_graph(io::graph_document(ds, lg)));
  std::ostream& rep = sink.report();
  rep << "command: extract\n";
  stamp_line(rep, opt);
  rep << "disks: " << ds.size() << "\n"
      << "edges: " << lg.graph.edges.size() << "\n";
  return kSuccess;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const DiskSet ds = io::read_disks(read_file(opt.input));
  const LabeledContactGraph lg = io::to_labeled_graph(io::read_graph(read_file(opt.second)));
  const RealizationReport report =
      verify_realization(ds, lg, opt.tol, opt.angle_tol_deg * std::numbers::pi / 180.0);
  out << "command: verify\n";
  stamp_line(out, opt);
  out << "result: " << (report.pass ? "pass" : "fail") << "\n"
      << "defects: " << report.defects.size() << "\n";
  for (const auto& d : report.defects) out << "defect: " << to_string(d.kind) << ": " << d.message << "\n";
  return report.pass ? kSuccess : kCheckedFalse;
}

int cmd_thin(const Options& opt, std::ostream& out) {
  const DiskSet ds = io::read_disks(read_file(opt.input));
  const ThinReport report = is_thin(ds, opt.tol);
  out << "command: thin\n";
  stamp_line(out, opt);
  out << "thin: " << (report.thin ? "yes" : "no") << "\n"
      << "violations: " << report.violations.size() << "\n";
  for (const auto& v : report.violations) {
    out << "triple: " << v.a << " " << v.b << " " << v.c << " witness " << num(v.witness.x) << " "
        << num(v.witness.y) << "\n";
  }
  return report.thin ? kSuccess : kCheckedFalse;
}

int cmd_feasible(const Options& opt, std::ostream& out) {
  const io::GraphDocument doc = io::read_graph(read_file(opt.input));
  const Graph g = io::to_graph(doc);
  bool feasible = true;
  out << "command: feasible\n";
  stamp_line(out, opt);

  const SimpleReport simple = validate_simple(g);
  out << "simple: " << (simple.ok ? "ok" : "violation") << "\n";
  for (const auto& v : simple.violations) out << "simple_violation: " << v.message << "\n";
  feasible &= simple.ok;

  const EdgeCountReport count = planarity_necessary(g);
  out << "edge_count: " << (count.ok ? "ok" : "violation") << ": " << count.message << "\n";
  feasible &= count.ok;

  if (!simple.ok) {
    out << "euler: skipped (graph is not simple)\n"
        << "quads: skipped (graph is not simple)\n";
  } else {
    if (!g.connected()) {
      out << "euler: skipped (graph is disconnected)\n";
    } else {
      const FaceReport faces = faces_from_rotation(io::to_embedding(doc));
      out << "euler: " << (faces.planar ? "ok" : "violation") << ": " << faces.message << "\n";
      feasible &= faces.planar;
    }
    const QuadReport quads = quad_feasibility(io::to_labeled_graph(doc));
    out << "quads: " << (quads.ok ? "ok" : "violation") << ": " << quads.message << "\n";
    for (const auto& c : quads.infeasible) {
      out << "infeasible_cycle:";
      for (std::size_t v : c.cycle) out << " " << g.vertices[v];
      out << " sum_deg " << num(c.label_sum * 180.0 / std::numbers::pi) << " >= 360\n";
    }
    feasible &= quads.ok;
  }
  out << "feasible: " << (feasible ? "yes" : "no") << "\n";
  return feasible ? kSuccess : kCheckedFalse;
}

int cmd_compare(const Options& opt, std::ostream& out) {
  const DiskSet a = io::read_disks(read_file(opt.input));
  const DiskSet b = io::read_disks(read_file(opt.second));
  std::map<std::string, std::string> corr;
  if (opt.map.empty()) {
    for (const auto& id : a.ids()) corr[id] = id;
  } else {
    corr = io::read_correspondence(read_file(opt.map));
  }
  const auto t = are_similar(a, b, corr, opt.tol);
  out << "command: compare\n";
  stamp_line(out, opt);
  if (!t) {
    out << "similar: no\n";
    return kCheckedFalse;
  }
  out << "similar: yes\n"
      << "scale: " << num(t->scale) << "\n"
      << "rotation_deg: " << num(t->rotation * 180.0 / std::numbers::pi) << "\n"
      << "reflect: " << (t->reflect ? "yes" : "no") << "\n"
      << "translation: " << num(t->translation.x) << " " << num(t->translation.y) << "\n";
  return kSuccess;
}

int cmd_rigidity(const Options& opt, std::ostream& out) {
  const DiskSet ds = io::read_disks(read_file(opt.input));
  const LabeledContactGraph lg = io::to_labeled_graph(io::read_graph(read_file(opt.second)));
  const std::set<std::string> pinned(opt.pins.begin(), opt.pins.end());
  const RigidityReport r = rigidity_index(ds, lg, pinned, opt.rank_tol);
  out << "command: rigidity\n";
  stamp_line(out, opt);
  out << "flex_dimension: " << r.flex_dimension << "\n"
      << "null_dimension: " << r.null_dimension << "\n"
      << "unknowns: " << r.unknowns << "\n"
      << "constraints: " << r.constraints << "\n"
      << "pinned:";
  for (const auto& p : r.pinned) out << " " << p;
  out << "\nsingular_values:";
  for (double s : r.singular_values) out << " " << num(s);
  out << "\nnote: " << r.note << "\n";
  return kSuccess;
}

int cmd_render(const Options& opt, std::ostream& out, std::ostream& err) {
  const DiskSet ds = io::read_disks(read_file(opt.input));
  std::optional<LabeledContactGraph> overlay;
  if (!opt.graph.empty()) overlay = io::to_labeled_graph(io::read_graph(read_file(opt.graph)));
  io::SvgOptions svg;
  if (!opt.fill.empty()) svg.fill = opt.fill;
  Sink sink{out, err, opt};
  sink.document(io::render_svg(ds, overlay ? &*overlay : nullptr, svg));
  std::ostream& rep = sink.report();
  rep << "command: render\n";
  stamp_line(rep, opt);
  rep << "circles: " << ds.size() << "\n"
      << "segments: " << (overlay ? overlay->graph.edges.size() : 0) << "\n";
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circle packing and disk configuration toolkit", "cpack"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--stamp", opt.stamp, "Add a UTC timestamp line to reports");

  auto* pack_cmd = app.add_subcommand("pack", "Realize a triangulated graph document as disks");
  pack_cmd->add_option("graph", opt.input, "Graph document (JSON)")->required();
  pack_cmd->add_option("--tol", opt.pack_tol, "Angle-sum tolerance in radians (default 1e-10)");
  pack_cmd->add_option("--max-iter", opt.max_iter, "Maximum solver sweeps (default 100000)");
  pack_cmd->add_option("--out", opt.out, "Write the disk document here instead of standard output");

  auto* extract_cmd = app.add_subcommand("extract", "Extract the labeled contact graph of a disk document");
  extract_cmd->add_option("disks", opt.input, "Disk document (JSON)")->required();
  extract_cmd->add_option("--tol", opt.tol, "Length tolerance for tangency (default 1e-9)");
  extract_cmd->add_option("--out", opt.out, "Write the graph document here instead of standard output");

  auto* verify_cmd = app.add_subcommand("verify", "Check that disks realize a labeled graph");
  verify_cmd->add_option("disks", opt.input, "Disk document (JSON)")->required();
  verify_cmd->add_option("graph", opt.second, "Graph document (JSON)")->required();
  verify_cmd->add_option("--tol", opt.tol, "Length tolerance for tangency (default 1e-9)");
  verify_cmd->add_option("--angle-tol", opt.angle_tol_deg, "Overlap-angle tolerance in degrees (default 1e-4)");

  auto* thin_cmd = app.add_subcommand("thin", "Check that no three disks share a point");
  thin_cmd->add_option("disks", opt.input, "Disk document (JSON)")->required();
  thin_cmd->add_option("--tol", opt.tol, "Length tolerance (default 1e-9)");

  auto* feasible_cmd = app.add_subcommand(
      "feasible", "Simplicity, edge-count bound, Euler characteristic and 4-cycle angle-sum checks");
  feasible_cmd->add_option("graph", opt.input, "Graph document (JSON)")->required();

  auto* compare_cmd = app.add_subcommand("compare", "Test whether two disk documents are similar");
  compare_cmd->add_option("first", opt.input, "Disk document (JSON)")->required();
  compare_cmd->add_option("second", opt.second, "Disk document (JSON)")->required();
  compare_cmd->add_option("--map", opt.map, "Correspondence document (default: match equal ids)");
  compare_cmd->add_option("--tol", opt.tol, "Length tolerance on centers and radii (default 1e-9)");

  auto* rigidity_cmd = app.add_subcommand("rigidity", "First-order flex count of a realized labeled graph");
  rigidity_cmd->add_option("disks", opt.input, "Disk document (JSON)")->required();
  rigidity_cmd->add_option("graph", opt.second, "Graph document (JSON)")->required();
  rigidity_cmd->add_option("--pin", opt.pins, "Ids of disks held fixed (default: none)");
  rigidity_cmd->add_option("--rank-tol", opt.rank_tol,
                           "Singular values below rank-tol times the largest count as zero (default 1e-8)");

  auto* render_cmd = app.add_subcommand("render", "Draw a disk document as SVG");
  render_cmd->add_option("disks", opt.input, "Disk document (JSON)")->required();
  render_cmd->add_option("--graph", opt.graph, "Overlay this graph document as dashed segments");
  render_cmd->add_option("--fill", opt.fill, "Disk fill color (default: none)");
  render_cmd->add_option("--out", opt.out, "Write the SVG here instead of standard output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (pack_cmd->parsed()) return cmd_pack(opt, out, err);
    if (extract_cmd->parsed()) return cmd_extract(opt, out, err);
    if (verify_cmd->parsed()) return cmd_verify(opt, out);
    if (thin_cmd->parsed()) return cmd_thin(opt, out);
    if (feasible_cmd->parsed()) return cmd_feasible(opt, out);
    if (compare_cmd->parsed()) return cmd_compare(opt, out);
    if (rigidity_cmd->parsed()) return cmd_rigidity(opt, out);
    if (render_cmd->parsed()) return cmd_render(opt, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return is_numerical(e.kind()) ? kNumericalFailure : kUsageError;
  }
  return kUsageError;
}

}  // namespace cpack::cli
