// Command-line front end. Every subcommand builds one JSON record; --json prints it
// verbatim, otherwise it is rendered as indented text.
//
// Exit codes: 0 success, 2 domain rejection or invalid input, 1 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rotalg/chern_lattice.hpp"
#include "rotalg/json_io.hpp"
#include "rotalg/selftest.hpp"
#include "rotalg/text_format.hpp"

using namespace rotalg;

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kRejected = 2;

// Raised for domain rejections that carry a module reason code.
struct Rejection {
  std::string code;
  std::string message;
};

struct Common {
  std::string theta = "golden";
  bool json = false;
};

void render(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    const bool nested_obj = v.is_object() && !v.empty();
    const bool nested_arr = v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array());
    if (nested_obj) {
      os << pad << it.key() << ":\n";
      render(os, v, indent + 2);
    } else if (nested_arr && !(v.front().is_array() && v.front().size() == 2 && v.front().front().is_number())) {
      os << pad << it.key() << ":\n";
      for (std::size_t k = 0; k < v.size(); ++k) {
        os << pad << "  [" << k << "]\n";
        if (v[k].is_object()) {
          render(os, v[k], indent + 4);
        } else {
          os << pad << "    " << v[k].dump() << "\n";
        }
      }
    } else if (v.is_string()) {
      os << pad << it.key() << ": " << v.get<std::string>() << "\n";
    } else {
      os << pad << it.key() << ": " << v.dump() << "\n";
    }
  }
}

void emit(const Json& record, const Common& c, std::ostream& os = std::cout) {
  if (c.json) {
    os << record.dump(2) << "\n";
  } else {
    render(os, record, 0);
  }
}

// "@path" reads the payload from a file; anything else is the payload itself.
std::string payload(const std::string& arg) {
  if (arg.empty() || arg.front() != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw Rejection{"io-error", "cannot read " + arg.substr(1)};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Rejection{"io-error", "cannot read " + path};
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Rejection{"malformed-json", e.what()};
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Rejection{"io-error", "cannot write " + path};
  out << j.dump(2) << "\n";
}

ThetaParam theta_of(const std::string& theta_text) {
  try {
    return ThetaParam::parse(theta_text);
  } catch (const std::exception& e) {
    throw Rejection{"invalid-theta", e.what()};
  }
}

TraceValue parse_trace(const std::string& text) {
  const KScalar k = parse_kscalar(text);
  if (!k.is_real() || !k.a.is_integer() || !k.b.is_integer()) {
    throw Rejection{"wrong-subgroup", "trace '" + text + "' is not in Z + Z theta"};
  }
  return {k.a.to_integer(), k.b.to_integer()};
}

int cmd_eval(const Common& c, const std::string& expr) {
  const ThetaParam theta = theta_of(c.theta);
  const Element x = parse_element(payload(expr));
  Json rec;
  rec["theta"] = c.theta;
  rec["element"] = x.str();
  rec["T2"] = t2_json(chern_T2(x), theta);
  rec["T4"] = t4_json(chern_T4(x), theta);
  const auto fail = relation_check(x);
  rec["relations"] = fail ? Json(fail->identity) : Json("ok");
  emit(rec, c);
  return kOk;
}

int cmd_decompose(const Common& c, const std::string& vec) {
  const ChernVector v = parse_chern(payload(vec));
  const DecomposeResult d = decompose(v);
  Json rec;
  rec["vector"] = v.str();
  rec["status"] = d.status == DecomposeStatus::ok            ? "ok"
                  : d.status == DecomposeStatus::non_integer ? "non-integer"
                                                             : "inconsistent";
  rec["coordinates"] = d.coordinates ? Json(*d.coordinates) : Json(nullptr);
  if (d.solution) {
    Json sol = Json::array();
    for (const auto& q : *d.solution) sol.push_back(q.str());
    rec["solution"] = sol;
  } else {
    rec["solution"] = nullptr;
  }
  if (d.status != DecomposeStatus::ok) {
    rec["reason"] = std::string(reason_code(RejectReason::not_in_lattice));
    emit(rec, c);
    return kRejected;
  }
  emit(rec, c);
  return kOk;
}

int cmd_cone(const Common& c, const std::string& vec) {
  const ThetaParam theta = theta_of(c.theta);
  const ChernVector v = parse_chern(payload(vec));
  const MembershipDecision d = semiflat_membership(v, theta);
  Json rec;
  rec["theta"] = c.theta;
  rec["vector"] = v.str();
  const Json decision = decision_json(d);
  for (const auto& [k, val] : decision.items()) rec[k] = val;
  emit(rec, c);
  return d.member ? kOk : kRejected;
}

int cmd_realize(const Common& c, const std::string& kind_text, const std::string& trace_text,
                const std::string& out_path) {
  const ThetaParam theta = theta_of(c.theta);
  RealizeKind kind;
  try {
    kind = parse_kind(kind_text);
  } catch (const std::invalid_argument& e) {
    throw Rejection{"unknown-kind", e.what()};
  }
  const TraceValue t = parse_trace(trace_text);
  Certificate cert;
  try {
    cert = realize(kind, t, theta);
  } catch (const RealizeError& e) {
    throw Rejection{std::string(error_code_name(e.code())), e.what()};
  }
  Json doc;
  doc["theta"] = c.theta;
  doc["kind"] = std::string(kind_name(kind));
  doc["trace"] = t.str();
  doc["certificate"] = certificate_json(cert);
  if (!out_path.empty()) write_json_file(out_path, doc);
  emit(doc, c);
  return kOk;
}

int cmd_verify(const Common& c, const std::string& path, bool theta_given, double tol) {
  const Json doc = read_json_file(path);
  std::string theta_text = c.theta;
  if (!theta_given && doc.contains("theta") && doc["theta"].is_string()) theta_text = doc["theta"].get<std::string>();
  const ThetaParam theta = theta_of(theta_text);
  const Json& body = doc.contains("certificate") ? doc["certificate"] : doc;
  Certificate cert;
  try {
    cert = certificate_from_json(body);
  } catch (const std::exception& e) {
    throw Rejection{"malformed-certificate", e.what()};
  }
  const VerifyReport r = verify_certificate(cert, theta, tol);
  Json rec;
  rec["theta"] = theta_text;
  rec["pass"] = r.pass;
  rec["nodes_checked"] = r.nodes_checked;
  rec["failing_node"] = r.pass ? Json(nullptr) : Json(r.failing_node);
  rec["message"] = r.pass ? Json(nullptr) : Json(r.message);
  emit(rec, c);
  return r.pass ? kOk : kRejected;
}

int cmd_pr_build(const Common& c, std::int64_t r, std::int64_t s, bool flip, const PrOptions& opts,
                 const std::string& out_path) {
  const ThetaParam theta = theta_of(c.theta);
  PrBuild b;
  try {
    b = pr_build(r, s, theta, flip, opts);
  } catch (const NumericError& e) {
    throw Rejection{e.code(), e.what()};
  }
  Json rec;
  rec["theta"] = c.theta;
  rec["r"] = r;
  rec["s"] = s;
  rec["alpha"] = b.alpha;
  rec["epsilon"] = b.epsilon;
  rec["grid"] = b.e.grid;
  rec["flip_symmetric"] = flip;
  rec["residuals"] = {{"idempotent", b.idempotent_residual},
                      {"selfadjoint", b.selfadjoint_residual},
                      {"flip", b.flip_residual ? Json(*b.flip_residual) : Json(nullptr)}};
  rec["invariants"] = invariants_json(loop_invariants(b.e, theta, r));
  if (!out_path.empty()) write_json_file(out_path, loop_json(b.e));
  emit(rec, c);
  return kOk;
}

int cmd_selftest(const Common& c) {
  const auto suites = run_selftest();
  bool all = true;
  Json list = Json::array();
  for (const auto& s : suites) {
    all = all && s.pass;
    list.push_back({{"suite", s.name}, {"pass", s.pass}, {"cases", s.cases}, {"detail", s.detail}});
  }
  if (c.json) {
    std::cout << Json{{"pass", all}, {"suites", list}}.dump(2) << "\n";
  } else {
    for (const auto& s : suites) {
      std::cout << (s.pass ? "PASS " : "FAIL ") << s.name << " (" << s.cases << " cases)";
      if (!s.pass) std::cout << ": " << s.detail;
      std::cout << "\n";
    }
  }
  return all ? kOk : kInternal;
}

void report_error(const Common& c, const Json& err) {
  if (c.json) {
    std::cout << err.dump(2) << "\n";
  } else {
    std::cerr << "error [" << err["error"].get<std::string>() << "]: " << err["message"].get<std::string>() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numeric tools for the irrational rotation algebra and its Fourier orbifold"};
  app.require_subcommand(1);

  Common common;
  std::string expr, vec, kind, trace, out_path, in_path;
  double tol = 1e-9;
  std::int64_t r = 0, s = 0;
  bool flip = false;
  PrOptions pr_opts;
  double epsilon = 0.0;

  auto add_common = [&](CLI::App* sub, bool theta) {
    if (theta) sub->add_option("--theta", common.theta, "golden | sqrt2 | [0;a1,a2,...] | decimal")->capture_default_str();
    sub->add_flag("--json", common.json, "Print the JSON record");
  };

  auto* eval = app.add_subcommand("eval", "T2/T4 of an element expression");
  add_common(eval, true);
  eval->add_option("--expr", expr, "Element, e.g. \"L^4 U^2 V^-1 + 1/2\" (or @file)")->required();

  auto* dec = app.add_subcommand("decompose", "Coordinates of a Chern vector over the nine basis vectors");
  add_common(dec, false);
  dec->add_option("--vector", vec, "\"(tau; psi10, psi11; psi20, psi21, psi22)\" (or @file)")->required();

  auto* cone = app.add_subcommand("cone", "Semiflat cone membership, genus and synthesis recipe");
  add_common(cone, true);
  cone->add_option("--vector", vec, "Chern vector (or @file)")->required();

  auto* rea = app.add_subcommand("realize", "Certificate that a trace is realized by a projection of a kind");
  add_common(rea, true);
  rea->add_option("--kind", kind, "cyclic | semicyclic | flat | semiflat | fourier_invariant")->required();
  rea->add_option("--trace", trace, "Trace a + b t, e.g. \"8t-4\"")->required();
  rea->add_option("--out", out_path, "Write the certificate document here");

  auto* ver = app.add_subcommand("verify", "Replay a certificate file");
  add_common(ver, true);
  ver->add_option("input,--in", in_path, "Certificate JSON file")->required();
  ver->add_option("--tol", tol, "Tolerance for stored numeric values")->capture_default_str();

  auto* prb = app.add_subcommand("pr-build", "Numeric Powers-Rieffel projection and its invariants");
  add_common(prb, true);
  prb->add_option("--r", r, "Power of U in the base unitary")->required();
  prb->add_option("--s", s, "Integer shift; alpha = r theta + s")->required();
  prb->add_flag("--flip", flip, "Build the flip-symmetric variant (alpha in (1/2, 1))");
  prb->add_option("--grid", pr_opts.grid, "Initial grid size (power of two >= 256)")->capture_default_str();
  prb->add_option("--epsilon", epsilon, "Ramp width (default min(alpha, 1 - alpha)/4)");
  prb->add_option("--tol", pr_opts.idempotent_tol, "Idempotent residual gate")->capture_default_str();
  prb->add_option("--out", out_path, "Write the loop element here");

  auto* self = app.add_subcommand("selftest", "Run the exact identity suites");
  add_common(self, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kRejected;
  }

  const bool theta_given = ver->count("--theta") > 0;
  if (prb->count("--epsilon") > 0) pr_opts.epsilon = epsilon;
  if (pr_opts.grid > pr_opts.max_grid) pr_opts.max_grid = pr_opts.grid;

  try {
    if (*eval) return cmd_eval(common, expr);
    if (*dec) return cmd_decompose(common, vec);
    if (*cone) return cmd_cone(common, vec);
    if (*rea) return cmd_realize(common, kind, trace, out_path);
    if (*ver) return cmd_verify(common, in_path, theta_given, tol);
    if (*prb) return cmd_pr_build(common, r, s, flip, pr_opts, out_path);
    if (*self) return cmd_selftest(common);
  } catch (const Rejection& rej) {
    Json err{{"error", rej.code}, {"message", rej.message}};
    report_error(common, err);
    return kRejected;
  } catch (const ParseError& e) {
    report_error(common, {{"error", "parse-error"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}});
    return kRejected;
  } catch (const std::exception& e) {
    report_error(common, {{"error", "internal-error"}, {"message", e.what()}});
    return kInternal;
  }
  return kInternal;
}
