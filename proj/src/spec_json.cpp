#include "json.hpp"

#include "ecogen/spec.hpp"

namespace ecogen {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "ecogen.spec/1";

json expr_to_json(const Expr& e) {
  if (e.is_affine()) return json{{"affine", json::array({e.slope(), e.offset()})}};
  json args = json::array();
  for (const auto& a : e.args()) args.push_back(expr_to_json(a));
  return json{{"call", std::string(builtin_name(*e.builtin()))}, {"args", std::move(args)}};
}

[[noreturn]] void schema_fail(const std::string& msg) { throw SchemaError("spec JSON: " + msg); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) schema_fail(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

Expr expr_from_json(const json& j) {
  if (j.is_object() && j.contains("affine")) {
    const json& a = j.at("affine");
    if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() || !a[1].is_number_integer())
      schema_fail("'affine' must be [slope, offset]");
    return Expr::affine(a[0].get<std::int64_t>(), a[1].get<std::int64_t>());
  }
  const json& name = field(j, "call");
  if (!name.is_string()) schema_fail("'call' must be a string");
  auto fn = builtin_from_name(name.get<std::string>());
  if (!fn) schema_fail("unknown builtin '" + name.get<std::string>() + "'");
  const json& args = field(j, "args");
  if (!args.is_array()) schema_fail("'args' must be an array");
  std::vector<Expr> out;
  for (const auto& a : args) out.push_back(expr_from_json(a));
  return Expr::call(*fn, std::move(out));
}

json atom_to_json(const GuardAtom& a) {
  switch (a.kind) {
    case GuardAtom::Kind::ge: return json{{"atom", "ge"}, {"c", a.c}};
    case GuardAtom::Kind::le: return json{{"atom", "le"}, {"c", a.c}};
    case GuardAtom::Kind::mod_eq: return json{{"atom", "mod"}, {"m", a.m}, {"r", a.r}};
    case GuardAtom::Kind::pow2: return json{{"atom", "pow2"}, {"negated", a.negated}};
    case GuardAtom::Kind::prime: return json{{"atom", "prime"}, {"negated", a.negated}};
  }
  return {};
}

GuardAtom atom_from_json(const json& j) {
  const json& kind = field(j, "atom");
  if (!kind.is_string()) schema_fail("'atom' must be a string");
  const std::string k = kind.get<std::string>();
  GuardAtom a;
  if (k == "ge" || k == "le") {
    a.kind = k == "ge" ? GuardAtom::Kind::ge : GuardAtom::Kind::le;
    a.c = int_field(j, "c");
  } else if (k == "mod") {
    a.kind = GuardAtom::Kind::mod_eq;
    a.m = int_field(j, "m");
    a.r = int_field(j, "r");
    if (a.m <= 0 || a.r < 0 || a.r >= a.m) schema_fail("bad modulus/residue");
  } else if (k == "pow2" || k == "prime") {
    a.kind = k == "pow2" ? GuardAtom::Kind::pow2 : GuardAtom::Kind::prime;
    const json& neg = field(j, "negated");
    if (!neg.is_boolean()) schema_fail("'negated' must be a boolean");
    a.negated = neg.get<bool>();
  } else {
    schema_fail("unknown guard atom '" + k + "'");
  }
  return a;
}

}  // namespace

std::string to_canonical_json(const EcoSpec& spec) {
  json clauses = json::array();
  for (const auto& c : spec.clauses) {
    json guard = json::array();
    for (const auto& a : c.guard.atoms) guard.push_back(atom_to_json(a));
    json prods = json::array();
    for (const auto& p : c.productions) {
      if (const auto* item = std::get_if<Item>(&p)) {
        prods.push_back({{"kind", "item"}, {"label", expr_to_json(item->label)}, {"multiplicity", expr_to_json(item->multiplicity)}});
      } else {
        const auto& iv = std::get<Interval>(p);
        json minus = json::array();
        for (const auto& e : iv.excluded) minus.push_back(expr_to_json(e));
        prods.push_back({{"kind", "interval"},
                         {"lo", expr_to_json(iv.lo)},
                         {"hi", expr_to_json(iv.hi)},
                         {"step", iv.step},
                         {"minus", std::move(minus)}});
      }
    }
    clauses.push_back({{"guard", std::move(guard)}, {"productions", std::move(prods)}});
  }
  json doc{{"schema", kSchema},
           {"name", spec.name},
           {"mode", spec.mode == Mode::eco ? "eco" : "walk"},
           {"axiom", spec.axiom},
           {"clauses", std::move(clauses)}};
  return doc.dump(2) + "\n";
}

EcoSpec from_canonical_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("spec JSON: ") + e.what());
  }
  const json& schema = field(doc, "schema");
  if (!schema.is_string() || schema.get<std::string>() != kSchema) schema_fail("unsupported schema version");
  EcoSpec spec;
  const json& name = field(doc, "name");
  if (!name.is_string()) schema_fail("'name' must be a string");
  spec.name = name.get<std::string>();
  const json& mode = field(doc, "mode");
  if (mode == "eco")
    spec.mode = Mode::eco;
  else if (mode == "walk")
    spec.mode = Mode::walk;
  else
    schema_fail("'mode' must be \"eco\" or \"walk\"");
  spec.axiom = int_field(doc, "axiom");
  const json& clauses = field(doc, "clauses");
  if (!clauses.is_array() || clauses.empty()) schema_fail("'clauses' must be a nonempty array");
  for (const auto& jc : clauses) {
    Clause c;
    const json& guard = field(jc, "guard");
    if (!guard.is_array()) schema_fail("'guard' must be an array");
    for (const auto& a : guard) c.guard.atoms.push_back(atom_from_json(a));
    const json& prods = field(jc, "productions");
    if (!prods.is_array() || prods.empty()) schema_fail("'productions' must be a nonempty array");
    for (const auto& jp : prods) {
      const json& kind = field(jp, "kind");
      if (kind == "item") {
        c.productions.push_back(Item{expr_from_json(field(jp, "label")), expr_from_json(field(jp, "multiplicity"))});
      } else if (kind == "interval") {
        Interval iv;
        iv.lo = expr_from_json(field(jp, "lo"));
        iv.hi = expr_from_json(field(jp, "hi"));
        iv.step = int_field(jp, "step");
        if (iv.step <= 0) schema_fail("'step' must be positive");
        const json& minus = field(jp, "minus");
        if (!minus.is_array()) schema_fail("'minus' must be an array");
        for (const auto& e : minus) iv.excluded.push_back(expr_from_json(e));
        c.productions.push_back(std::move(iv));
      } else {
        schema_fail("production kind must be \"item\" or \"interval\"");
      }
    }
    spec.clauses.push_back(std::move(c));
  }
  return spec;
}

}  // namespace ecogen
