#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "polarium/polarium.hpp"

using namespace polarium;
using io::json;

namespace {

enum ExitCode { kOk = 0, kDomain = 1, kViolation = 2, kInternal = 3 };

struct Options {
  std::string command;
  std::string type;
  std::string input;
  std::string window;
  std::string format = "json";
  std::string out;
  std::string grid;
  std::string variant = "both";
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  std::int64_t m = 0;
  std::int64_t i = 1;
  bool zero_only = false;
};

struct Result {
  json doc;
  int status = kOk;
};

json read_input(const Options& o) {
  if (o.input.empty()) return json::object();
  std::string text;
  if (o.input == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(o.input);
    if (!f) fail(ErrorCode::InvalidArgument, "cli", "cannot open input file " + o.input);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidArgument, "cli", std::string("malformed JSON input: ") + e.what());
  }
}

WeylGroup group_for(const Options& o, const json& in) {
  if (!o.type.empty()) return WeylGroup::generate(RootDatum::build(CartanType::parse(o.type)));
  if (in.is_object() && in.contains("type")) return WeylGroup::generate(RootDatum::build(io::type_from(in["type"])));
  fail(ErrorCode::InvalidArgument, "cli", "a root datum type is required (--type or \"type\" in the input)");
}

std::optional<std::pair<Rational, Rational>> parse_window(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto colon = s.find(':');
  if (colon == std::string::npos) fail(ErrorCode::InvalidArgument, "cli", "window must look like LO:HI");
  Rational lo = parse_rational(s.substr(0, colon)), hi = parse_rational(s.substr(colon + 1));
  if (!(lo < hi)) fail(ErrorCode::InvalidArgument, "cli", "window must satisfy LO < HI");
  return std::make_pair(lo, hi);
}

/// Polar datum from the input, checked against its own invariants.
PolarDatum checked_datum(const WeylGroup& W, const json& in) {
  auto d = io::datum_from(W, in);
  if (auto why = datum_violation(W, d))
    fail(ErrorCode::InvalidArgument, "polar", "input is not a polar datum: " + *why);
  return d;
}

std::optional<std::vector<Rational>> point_of(const json& in) {
  if (in.contains("x")) return io::point_from(in["x"]);
  return std::nullopt;
}

json x_json(const LoopContext& ctx) { return io::encode_rationals(ctx.grading().x()); }

Result cmd_classify(const Options& o) {
  auto in = read_input(o);
  auto W = group_for(o, in);
  auto tc = in.contains("torus") ? io::torus_from(W, in["torus"]) : split_torus(W);
  auto lam = io::tail_from(W.root_datum(), io::field(in, "lambda"));
  return {io::encode(W, classify(W, tc, lam))};
}

Result cmd_yu_sequence(const Options& o) {
  auto in = read_input(o);
  auto W = group_for(o, in);
  auto d = checked_datum(W, in);
  json doc = io::encode(yu_ladder(W, d));
  doc["type"] = W.root_datum().type().str();
  return {doc};
}

Result cmd_epipelagic(const Options& o) {
  auto W = group_for(o, read_input(o));
  if (o.m < 1) fail(ErrorCode::InvalidArgument, "cli", "--m must be a positive integer");
  return {io::encode(W, epipelagic_datum(W, o.m))};
}

Result cmd_homogeneous(const Options& o) {
  auto W = group_for(o, read_input(o));
  if (o.m < 1) fail(ErrorCode::InvalidArgument, "cli", "--m must be a positive integer");
  return {io::encode(W, homogeneous_datum(W, o.m, o.i))};
}

Result cmd_jlattice(const Options& o) {
  auto in = read_input(o);
  auto W = group_for(o, in);
  auto ctx = LoopContext::build(W, checked_datum(W, in), point_of(in));
  if (auto w = parse_window(o.window)) ctx.set_window(w->first, w->second);
  auto J = ctx.build_j_lattice();
  if (auto why = ctx.closure_violation(J)) fail(ErrorCode::InternalInvariantViolation, "looplie", *why);
  Result r;
  json forms = json::array();
  for (int j = 1; j <= ctx.top_level(); ++j) {
    if (!ctx.has_symplectic_level(j)) continue;
    auto f = ctx.symplectic_form(j);
    json rows = json::array();
    for (const auto& row : f.matrix) {
      json jr = json::array();
      for (const auto& x : row) jr.push_back(io::encode(x));
      rows.push_back(jr);
    }
    forms.push_back({{"level", j}, {"degree", to_string(f.degree)}, {"matrix", rows}});
  }
  auto psi = ctx.psi_violation(J);
  json controls = json::array();
  bool controls_ok = true;
  for (int level = 0; level <= ctx.top_level(); ++level) {
    auto bad = ctx.lowered(J, level);
    bool c = ctx.closure_violation(bad).has_value(), p = ctx.psi_violation(bad).has_value();
    controls_ok = controls_ok && (c || p);
    controls.push_back({{"level", level}, {"closure_fails", c}, {"psi_fails", p}});
  }
  r.doc = {{"type", W.root_datum().type().str()},
           {"x", x_json(ctx)},
           {"window", {to_string(ctx.window().first), to_string(ctx.window().second)}},
           {"datum", io::encode(W, ctx.datum())},
           {"lattice", io::encode(ctx, J)},
           {"symplectic_forms", forms},
           {"checks",
            {{"closure", true}, {"psi", !psi}, {"negative_controls", controls}, {"negative_controls_detected", controls_ok}}}};
  if (psi) r.doc["checks"]["psi_detail"] = *psi;
  if (psi || !controls_ok) r.status = kViolation;
  return r;
}

Result cmd_verify_sl2(const Options& o) {
  auto W = WeylGroup::generate(RootDatum::build(CartanType::parse("A1")));
  if (!o.input.empty()) {
    auto a = io::window_from(read_input(o));
    auto s = sl2_stratum(a);
    bool ok = sl2_crosscheck(W, a);
    return {{{"a", io::encode(a)}, {"stratum", io::encode(s)}, {"crosscheck", ok}}, ok ? kOk : kViolation};
  }
  if (!o.grid.empty() && o.grid != "default")
    fail(ErrorCode::InvalidArgument, "cli", "unknown grid '" + o.grid + "' (only 'default' is defined)");
  auto report = verify_sl2_grid(W, sl2_default_grid());
  return {io::encode(report), report.violations.empty() ? kOk : kViolation};
}

Result cmd_regular_numbers(const Options& o) {
  auto W = group_for(o, read_input(o));
  json doc = io::encode(regular_numbers(W));
  doc["type"] = W.root_datum().type().str();
  doc["coxeter_number"] = coxeter_number(W.root_datum());
  return {doc};
}

Result cmd_list_tori(const Options& o) {
  auto W = group_for(o, read_input(o));
  json classes = json::array();
  for (const auto& tc : list_torus_classes(W)) {
    json dims = json::array();
    for (const auto& e : tc.eigenspaces) dims.push_back(e.size());
    classes.push_back({{"m", tc.m},
                       {"w", io::encode(tc.element.matrix)},
                       {"split", tc.is_split()},
                       {"elliptic", tc.is_elliptic()},
                       {"regular", is_springer_regular(W.root_datum(), tc)},
                       {"eigenspace_dims", dims}});
  }
  return {{{"type", W.root_datum().type().str()}, {"classes", classes}}};
}

Result cmd_partition_check(const Options& o) {
  auto W = group_for(o, read_input(o));
  PartitionConfig cfg;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.zero_only = o.zero_only;
  auto report = partition_check(W, cfg);
  json doc = io::encode(report);
  doc["type"] = W.root_datum().type().str();
  doc["seed"] = o.seed;
  return {doc, report.violations.empty() ? kOk : kViolation};
}

Result cmd_moveability(const Options& o) {
  auto in = read_input(o);
  auto W = group_for(o, in);
  bool unchecked = in.value("unchecked", false);
  auto ctx = unchecked ? LoopContext::build_unchecked(W, io::datum_from(W, in), point_of(in))
                       : LoopContext::build(W, checked_datum(W, in), point_of(in));
  if (auto w = parse_window(o.window)) ctx.set_window(w->first, w->second);
  std::vector<char> variants;
  if (o.variant == "both")
    variants = {'J', 'K'};
  else if (o.variant == "J" || o.variant == "K")
    variants = {o.variant[0]};
  else
    fail(ErrorCode::InvalidArgument, "cli", "--variant must be J, K or both");
  Result r;
  json reports = json::array();
  for (char v : variants) {
    auto rep = ctx.moveability(v);
    if (!rep.full_rank()) r.status = kViolation;
    reports.push_back(io::encode(rep));
  }
  r.doc = {{"type", W.root_datum().type().str()},
           {"x", x_json(ctx)},
           {"unchecked", unchecked},
           {"window", {to_string(ctx.window().first), to_string(ctx.window().second)}},
           {"reports", reports}};
  return r;
}

// --- table rendering ---------------------------------------------------------

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool nested(const json& rows) {
  for (const auto& row : rows)
    for (const auto& [k, x] : row.items())
      if (x.is_array() && !x.empty() && x[0].is_object()) return true;
  return false;
}

void render(std::ostream& os, const json& j, const std::string& prefix) {
  if (!j.is_object()) {
    os << (prefix.empty() ? "" : prefix + ": ") << cell(j) << "\n";
    return;
  }
  for (const auto& [key, v] : j.items()) {
    std::string name = prefix.empty() ? key : prefix + "." + key;
    if (v.is_object()) {
      render(os, v, name);
    } else if (v.is_array() && !v.empty() && v[0].is_object() && nested(v)) {
      for (std::size_t k = 0; k < v.size(); ++k) render(os, v[k], name + "[" + std::to_string(k) + "]");
    } else if (v.is_array() && !v.empty() && v[0].is_object()) {
      std::vector<std::string> cols;
      for (const auto& row : v)
        for (const auto& [k, x] : row.items())
          if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
      os << name << ":\n ";
      for (const auto& c : cols) os << " " << c;
      os << "\n";
      for (const auto& row : v) {
        os << " ";
        for (const auto& c : cols) os << " " << (row.contains(c) ? cell(row[c]) : "-");
        os << "\n";
      }
    } else {
      os << name << ": " << cell(v) << "\n";
    }
  }
}

void emit(const Options& o, const json& doc) {
  std::ostringstream ss;
  if (o.format == "table")
    render(ss, doc, "");
  else
    ss << doc.dump(2) << "\n";
  if (o.out.empty()) {
    std::cout << ss.str();
    return;
  }
  std::ofstream f(o.out);
  if (!f) fail(ErrorCode::InvalidArgument, "cli", "cannot write output file " + o.out);
  f << ss.str();
}

int emit_error(const Options& o, const std::string& code, const std::string& module, const std::string& msg, int status) {
  json doc{{"error", {{"code", code}, {"module", module}, {"message", msg}}}};
  std::cerr << "polarium: " << code << ": " << msg << "\n";
  try {
    emit(o, doc);
  } catch (...) {
    std::cout << doc.dump(2) << "\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Polar partition of loop Lie algebra duals: classification, ladders and lattice checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--type", o.type, "Root datum type, e.g. A2, G2, A1xT1");
  app.add_option("--input", o.input, "Input JSON file, or - for standard input");
  app.add_option("--seed", o.seed, "Seed for sampled checks");
  app.add_option("--samples", o.samples, "Number of samples for sampled checks");
  app.add_option("--window", o.window, "Degree window LO:HI for lattice checks");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--out", o.out, "Write output to this file instead of standard output");

  const std::vector<std::pair<const char*, const char*>> commands{
      {"classify", "Polar datum of a torus presentation and tail"},
      {"yu-sequence", "Depth breaks, Levi ladder and tail components of a polar datum"},
      {"epipelagic", "Epipelagic datum for a regular elliptic class of order m"},
      {"homogeneous", "Homogeneous datum of slope i/m"},
      {"jlattice", "Graded lattice, symplectic forms and their checks (type A)"},
      {"verify-sl2", "SL2 stratum table and its cross-check through classification"},
      {"regular-numbers", "Springer regular numbers of the Weyl group"},
      {"list-tori", "Conjugacy classes of the Weyl group as torus presentations"},
      {"partition-check", "Sampled partition properties of the polar classification"},
      {"moveability", "Per-degree rank of the pairing induced by lambda (type A)"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) subs[name] = app.add_subcommand(name, help);
  for (const char* name : {"epipelagic", "homogeneous"}) subs[name]->add_option("--m", o.m, "Order of the torus class");
  subs["homogeneous"]->add_option("--i", o.i, "Numerator of the slope i/m");
  subs["verify-sl2"]->add_option("--grid", o.grid, "Grid name (default)");
  subs["partition-check"]->add_flag("--zero-only", o.zero_only, "Sample only zero tails");
  subs["moveability"]->add_option("--variant", o.variant, "J, K or both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error(o, "invalid-argument", "cli", e.what(), kDomain);
  }
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) o.command = name;

  const std::map<std::string, Result (*)(const Options&)> table{
      {"classify", cmd_classify},         {"yu-sequence", cmd_yu_sequence},
      {"epipelagic", cmd_epipelagic},     {"homogeneous", cmd_homogeneous},
      {"jlattice", cmd_jlattice},         {"verify-sl2", cmd_verify_sl2},
      {"regular-numbers", cmd_regular_numbers}, {"list-tori", cmd_list_tori},
      {"partition-check", cmd_partition_check}, {"moveability", cmd_moveability}};

  try {
    auto r = table.at(o.command)(o);
    emit(o, r.doc);
    return r.status;
  } catch (const Error& e) {
    int status = e.code() == ErrorCode::InternalInvariantViolation ? kInternal : kDomain;
    return emit_error(o, std::string(to_string(e.code())), e.module(), e.what(), status);
  } catch (const json::exception& e) {
    return emit_error(o, "invalid-argument", "io", e.what(), kDomain);
  } catch (const std::exception& e) {
    return emit_error(o, "internal-invariant-violation", "cli", e.what(), kInternal);
  }
}
