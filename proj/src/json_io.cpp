#include "rotalg/json_io.hpp"

#include <stdexcept>

namespace rotalg {

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json rational_json(const Rational& r) {
  if (r.is_integer()) return r.to_integer();
  return r.str();
}

Json trace_json(const TraceValue& t) { return {{"a", t.a}, {"b", t.b}}; }

TraceValue trace_from(const Json& j) { return {j.at("a").get<std::int64_t>(), j.at("b").get<std::int64_t>()}; }

Json convergent_json(const Convergent& c) { return {{"p", c.p}, {"q", c.q}}; }

Convergent convergent_from(const Json& j) { return {j.at("p").get<std::int64_t>(), j.at("q").get<std::int64_t>()}; }

Json leg_json(const EmbeddingLeg& l) {
  return {{"root1", l.root1}, {"root2", l.root2}, {"weight", l.weight}, {"floor", l.floor_n}};
}

EmbeddingLeg leg_from(const Json& j) {
  return {j.at("root1").get<std::int64_t>(), j.at("root2").get<std::int64_t>(), j.at("weight").get<std::int64_t>(),
          j.at("floor").get<std::int64_t>()};
}

struct NodeWriter {
  Json& out;
  void operator()(const CyclicLeaf& n) const {
    out["node"] = "cyclic-leaf";
    out["k"] = n.k;
    out["approximant"] = convergent_json(n.approximant);
  }
  void operator()(const FlatNode& n) const {
    const auto& d = n.decomposition;
    out["node"] = "flat";
    out["a"] = d.a;
    out["b"] = d.b;
    out["lower"] = convergent_json(d.lower);
    out["upper"] = convergent_json(d.upper);
    out["k"] = d.k;
    out["n"] = d.n;
    out["m"] = d.m;
  }
  void operator()(const CyclicNode&) const { out["node"] = "cyclic"; }
  void operator()(const SemicyclicNode& n) const {
    out["node"] = "semicyclic";
    out["doubled"] = trace_json(n.doubled);
  }
  void operator()(const SemiflatNode&) const { out["node"] = "semiflat"; }
  void operator()(const FourierInvariantNode& n) const {
    out["node"] = "fourier-invariant";
    out["m"] = n.m;
    out["n"] = n.n;
    out["squares"] = Json::array({n.squares.m1, n.squares.m2, n.squares.m3, n.squares.m4});
    out["leg1"] = leg_json(n.leg1);
    out["leg2"] = leg_json(n.leg2);
    out["k"] = n.k;
    out["branch"] = n.k == 0 ? "orthogonal-sum" : "complement-subtraction";
  }
  void operator()(const ReflectedNode&) const { out["node"] = "reflected"; }
};

CertificateNode node_from(const Json& j) {
  const std::string kind = j.at("node").get<std::string>();
  auto i64 = [&](const char* key) { return j.at(key).get<std::int64_t>(); };
  if (kind == "cyclic-leaf") return CyclicLeaf{i64("k"), convergent_from(j.at("approximant"))};
  if (kind == "flat") {
    FlatDecomposition d;
    d.a = i64("a");
    d.b = i64("b");
    d.lower = convergent_from(j.at("lower"));
    d.upper = convergent_from(j.at("upper"));
    d.k = i64("k");
    d.n = i64("n");
    d.m = i64("m");
    return FlatNode{d};
  }
  if (kind == "cyclic") return CyclicNode{};
  if (kind == "semicyclic") return SemicyclicNode{trace_from(j.at("doubled"))};
  if (kind == "semiflat") return SemiflatNode{};
  if (kind == "fourier-invariant") {
    FourierInvariantNode n;
    n.m = i64("m");
    n.n = i64("n");
    const auto& sq = j.at("squares");
    if (!sq.is_array() || sq.size() != 4) throw std::runtime_error("squares must be an array of four integers");
    n.squares = {sq[0].get<std::int64_t>(), sq[1].get<std::int64_t>(), sq[2].get<std::int64_t>(),
                 sq[3].get<std::int64_t>()};
    n.leg1 = leg_from(j.at("leg1"));
    n.leg2 = leg_from(j.at("leg2"));
    n.k = i64("k");
    return n;
  }
  if (kind == "reflected") return ReflectedNode{};
  throw std::runtime_error("unknown certificate node '" + kind + "'");
}

}  // namespace

Json scalar_json(const PhaseScalar& s, const ThetaParam& theta) {
  return {{"exact", s.str()}, {"numeric", complex_json(numeric_eval(s, theta))}};
}

Json t2_json(const T2Vector& v, const ThetaParam& theta) {
  return {{"tau", scalar_json(v.tau, theta)},
          {"phi00", scalar_json(v.phi00, theta)},
          {"phi01", scalar_json(v.phi01, theta)},
          {"phi10", scalar_json(v.phi10, theta)},
          {"phi11", scalar_json(v.phi11, theta)}};
}

Json t4_json(const T4Vector& v, const ThetaParam& theta) {
  Json out;
  const auto slots = v.slots();
  const char* names[] = {"tau", "psi10", "psi11", "psi20", "psi21", "psi22"};
  for (std::size_t k = 0; k < 6; ++k) out[names[k]] = scalar_json(slots[k], theta);
  return out;
}

Json genus_json(const Genus& g) {
  return Json::array({rational_json(g.g20), rational_json(g.g21), rational_json(g.g22)});
}

Json recipe_json(const SynthesisRecipe& r) {
  Json gens = Json::array();
  for (const auto& g : r.generators) {
    gens.push_back({{"basis_index", g.basis_index},
                    {"count", g.count},
                    {"negated", g.negated},
                    {"genus", genus_json(g.genus)},
                    {"trace", TraceValue{g.trace_a, g.trace_b}.str()}});
  }
  return {{"generators", gens}, {"flat_remainder", TraceValue{r.flat_a, r.flat_b}.str()}};
}

Json decision_json(const MembershipDecision& d) {
  Json out;
  out["member"] = d.member;
  out["reason"] = d.reason == RejectReason::none ? Json(nullptr) : Json(std::string(reason_code(d.reason)));
  out["coordinates"] = d.coordinates ? Json(*d.coordinates) : Json(nullptr);
  out["genus"] = d.genus ? genus_json(*d.genus) : Json(nullptr);
  out["relations_hold"] = d.relations_hold;
  out["recipe"] = d.recipe ? recipe_json(*d.recipe) : Json(nullptr);
  return out;
}

Json certificate_json(const Certificate& c) {
  Json out;
  out["lemma"] = std::string(lemma_tag(c));
  out["target"] = trace_json(c.target);
  out["value"] = c.value;
  std::visit(NodeWriter{out}, c.node);
  Json kids = Json::array();
  for (const auto& child : c.children) kids.push_back(certificate_json(child));
  out["children"] = kids;
  return out;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.target = trace_from(j.at("target"));
  c.value = j.at("value").get<double>();
  c.node = node_from(j);
  for (const auto& child : j.at("children")) c.children.push_back(certificate_from_json(child));
  return c;
}

Json loop_json(const LoopElement& e) {
  Json coeffs = Json::object();
  for (const auto& [k, f] : e.coeffs) {
    Json samples = Json::array();
    for (const auto& z : f.samples()) samples.push_back(complex_json(z));
    coeffs[std::to_string(k)] = samples;
  }
  return {{"beta", e.beta}, {"N", e.grid}, {"coeffs", coeffs}};
}

LoopElement loop_from_json(const Json& j) {
  LoopElement e;
  e.beta = j.at("beta").get<double>();
  e.grid = j.at("N").get<std::size_t>();
  for (const auto& [key, arr] : j.at("coeffs").items()) {
    std::vector<Complex> v;
    v.reserve(arr.size());
    for (const auto& z : arr) v.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    if (v.size() != e.grid) throw NumericError("grid-mismatch", "coefficient " + key + " has the wrong length");
    e.coeffs.emplace(std::stoll(key), CircleFunction(std::move(v)));
  }
  return e;
}

Json invariants_json(const LoopInvariants& inv) {
  auto one = [](const InvariantValue& v) {
    return Json{{"raw", complex_json(v.raw)}, {"rounded", v.rounded ? Json(*v.rounded) : Json(nullptr)}};
  };
  return {{"tau", one(inv.tau)},
          {"phi00", one(inv.phi[0])},
          {"phi01", one(inv.phi[1])},
          {"phi10", one(inv.phi[2])},
          {"phi11", one(inv.phi[3])}};
}

}  // namespace rotalg
