#include "fmr/model.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fmr {

namespace {

using Json = nlohmann::ordered_json;

const char* const kModule = "system-model";

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  if (diagnostics.empty()) return "invalid model";
  std::string out;
  for (const Diagnostic& d : diagnostics) {
    if (!out.empty()) out += "; ";
    out += d.message;
  }
  return out;
}

}  // namespace

ModelError::ModelError(std::vector<Diagnostic> diagnostics)
    : Error(kModule, join_diagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

std::string to_string(VarClass c) {
  return c == VarClass::Certain ? "certain" : "suspicious";
}

namespace {

struct KindInfo {
  Kind kind;
  const char* name;
};

constexpr KindInfo kKinds[] = {
    {Kind::And, "And"},   {Kind::Or, "Or"},       {Kind::Not, "Not"},
    {Kind::Add, "Add"},   {Kind::Sub, "Sub"},     {Kind::Avg, "Avg"},
    {Kind::Lim, "Lim"},   {Kind::Inv, "Inv"},     {Kind::Abs, "Abs"},
    {Kind::Mul, "Mul"},   {Kind::Gcom, "Gcom"},   {Kind::Lcom, "Lcom"},
    {Kind::DNF, "DNF"},   {Kind::CNF, "CNF"},     {Kind::KooN, "KooN"},
    {Kind::Monotone, "Monotone"},
};

}  // namespace

std::string to_string(Kind kind) {
  for (const auto& info : kKinds)
    if (info.kind == kind) return info.name;
  return "?";
}

std::optional<Kind> kind_from_string(std::string_view text) noexcept {
  for (const auto& info : kKinds)
    if (text == info.name) return info.kind;
  return std::nullopt;
}

std::vector<std::string> ComponentDecl::args() const {
  std::vector<std::string> all = inputs;
  all.insert(all.end(), params.begin(), params.end());
  return all;
}

const VariableDecl* SystemModel::find_variable(std::string_view name) const {
  for (const auto& v : variables)
    if (v.name == name) return &v;
  return nullptr;
}

const ComponentDecl* SystemModel::find_component(std::string_view name) const {
  for (const auto& c : components)
    if (c.name == name) return &c;
  return nullptr;
}

const ComponentDecl* SystemModel::producer_of(std::string_view var) const {
  for (const auto& c : components) {
    for (const auto& out : c.outputs)
      if (out == var) return &c;
  }
  return nullptr;
}

std::vector<std::string> SystemModel::boundary_variables() const {
  std::vector<std::string> out;
  for (const auto& v : variables)
    if (is_boundary(v.name)) out.push_back(v.name);
  return out;
}

ValueType argument_type(Kind kind) noexcept {
  switch (kind) {
    case Kind::And:
    case Kind::Or:
    case Kind::Not:
    case Kind::DNF:
    case Kind::CNF:
    case Kind::KooN: return ValueType::Boolean;
    default: return ValueType::Real;
  }
}

ValueType output_type(Kind kind) noexcept {
  if (kind == Kind::Gcom || kind == Kind::Lcom) return ValueType::Boolean;
  return argument_type(kind);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(s.front())) return false;
  return std::all_of(s.begin() + 1, s.end(), tail);
}

std::string position_of(std::string_view text, std::size_t byte) {
  // nlohmann reports the 1-based offset of the offending character.
  std::size_t offset = byte == 0 ? 0 : std::min(byte - 1, text.size());
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

class SchemaReader {
 public:
  std::vector<Diagnostic> problems;

  void fail(std::string code, std::string subject, std::string message) {
    problems.push_back({std::move(code), std::move(subject), std::move(message)});
  }

  const Json* field(const Json& obj, const char* key, const std::string& where,
                    bool required = true) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required)
        fail("missing-field", where,
             where + ": missing field '" + std::string(key) + "'");
      return nullptr;
    }
    return &*it;
  }

  std::optional<std::string> string_of(const Json& j, const std::string& where,
                                       const char* what) {
    if (!j.is_string()) {
      fail("schema", where, where + ": " + what + " must be a string");
      return std::nullopt;
    }
    return j.get<std::string>();
  }

  std::optional<std::string> name_of(const Json& j, const std::string& where) {
    auto s = string_of(j, where, "name");
    if (s && !is_identifier(*s)) {
      fail("invalid-identifier", *s, where + ": '" + *s + "' is not an identifier");
      return std::nullopt;
    }
    return s;
  }

  std::vector<std::string> names(const Json* j, const std::string& where,
                                 const char* what) {
    std::vector<std::string> out;
    if (!j) return out;
    if (!j->is_array()) {
      fail("schema", where, where + ": " + what + " must be a list of names");
      return out;
    }
    for (const Json& item : *j) {
      if (auto s = name_of(item, where)) out.push_back(*s);
    }
    return out;
  }

  std::optional<Value> value_of(const Json& j, const std::string& where) {
    if (j.is_boolean()) return Value{j.get<bool>()};
    if (j.is_number()) return Value{j.get<double>()};
    fail("schema", where, where + ": known values must be numbers or booleans");
    return std::nullopt;
  }

  VariableDecl variable(const Json& j, std::size_t index) {
    std::string where = "variables[" + std::to_string(index) + "]";
    VariableDecl decl;
    if (!j.is_object()) {
      fail("schema", where, where + " must be an object");
      return decl;
    }
    if (const Json* n = field(j, "name", where)) {
      if (auto s = name_of(*n, where)) {
        decl.name = *s;
        where = "variable '" + *s + "'";
      }
    }
    if (const Json* t = field(j, "type", where)) {
      auto s = string_of(*t, where, "type");
      if (s == "real") decl.type = ValueType::Real;
      else if (s == "bool") decl.type = ValueType::Boolean;
      else if (s) fail("schema", decl.name, where + ": unknown type '" + *s + "'");
    }
    if (const Json* c = field(j, "class", where)) {
      auto s = string_of(*c, where, "class");
      if (s == "certain") decl.cls = VarClass::Certain;
      else if (s == "suspicious") decl.cls = VarClass::Suspicious;
      else if (s) fail("schema", decl.name, where + ": unknown class '" + *s + "'");
    }
    if (const Json* k = field(j, "known", where, false)) {
      if (!k->is_object()) {
        fail("schema", decl.name, where + ": known must be an object");
      } else {
        for (auto it = k->begin(); it != k->end(); ++it) {
          if (it.key() == "sign") {
            auto s = string_of(it.value(), where, "sign");
            if (!s) continue;
            decl.known.sign = sign_from_string(*s);
            if (!decl.known.sign)
              fail("schema", decl.name, where + ": unknown sign '" + *s + "'");
          } else if (it.key() == "reported") {
            decl.known.reported = value_of(it.value(), where);
          } else if (it.key() == "intended") {
            decl.known.intended = value_of(it.value(), where);
          } else {
            fail("schema", decl.name,
                 where + ": unknown knowledge field '" + it.key() + "'");
          }
        }
      }
    }
    return decl;
  }

  Attrs attrs(const Json& j, const std::string& subject, const std::string& where) {
    Attrs a;
    if (!j.is_object()) {
      fail("schema", subject, where + ": attrs must be an object");
      return a;
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      std::optional<int>* slot = key == "k"   ? &a.k
                                 : key == "n" ? &a.n
                                 : key == "L" ? &a.L
                                 : key == "K" ? &a.K
                                              : nullptr;
      if (slot) {
        if (!it->is_number_integer()) {
          fail("attrs-invalid", subject, where + ": attr '" + key + "' must be an integer");
        } else {
          *slot = it->get<int>();
        }
      } else if (key == "gradient") {
        std::vector<Sign> signs;
        bool ok = it->is_array();
        if (ok) {
          for (const Json& s : *it) {
            auto sign = s.is_string() ? sign_from_string(s.get<std::string>())
                                      : std::nullopt;
            if (!sign) {
              ok = false;
              break;
            }
            signs.push_back(*sign);
          }
        }
        if (ok) a.gradient = std::move(signs);
        else fail("attrs-invalid", subject,
                  where + ": gradient must be a list of \"pos\"/\"neg\"");
      } else {
        fail("attrs-unexpected", subject, where + ": unknown attr '" + key + "'");
      }
    }
    return a;
  }

  ComponentDecl component(const Json& j, std::size_t index) {
    std::string where = "components[" + std::to_string(index) + "]";
    ComponentDecl decl;
    if (!j.is_object()) {
      fail("schema", where, where + " must be an object");
      return decl;
    }
    if (const Json* n = field(j, "name", where)) {
      if (auto s = name_of(*n, where)) {
        decl.name = *s;
        where = "component '" + *s + "'";
      }
    }
    if (const Json* k = field(j, "kind", where)) {
      if (auto s = string_of(*k, where, "kind")) {
        if (auto kind = kind_from_string(*s)) decl.kind = *kind;
        else fail("unknown-kind", decl.name, where + ": unknown kind '" + *s + "'");
      }
    }
    decl.inputs = names(field(j, "inputs", where), where, "inputs");
    decl.params = names(field(j, "params", where), where, "params");
    decl.outputs = names(field(j, "outputs", where), where, "outputs");
    if (const Json* a = field(j, "attrs", where, false)) {
      decl.attrs = attrs(*a, decl.name, where);
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
      static const std::set<std::string> known = {"name", "kind", "inputs",
                                                  "params", "outputs", "attrs"};
      if (!known.count(it.key()))
        fail("schema", decl.name, where + ": unknown field '" + it.key() + "'");
    }
    return decl;
  }
};

}  // namespace

SystemModel parse_model_unchecked(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = e.what();
    // Drop the library's "[json.exception.parse_error.101] " prefix.
    if (auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ModelError({{"syntax", position_of(text, e.byte),
                       "syntax error at " + position_of(text, e.byte) + ": " + msg}});
  }

  SchemaReader reader;
  SystemModel model;
  if (!doc.is_object()) {
    reader.fail("schema", "", "model file must contain a JSON object");
    throw ModelError(reader.problems);
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "variables" && it.key() != "components" && it.key() != "outputs")
      reader.fail("schema", "", "unknown top-level field '" + it.key() + "'");
  }
  if (const Json* vars = reader.field(doc, "variables", "model")) {
    if (!vars->is_array()) {
      reader.fail("schema", "", "variables must be a list");
    } else {
      for (std::size_t i = 0; i < vars->size(); ++i)
        model.variables.push_back(reader.variable((*vars)[i], i));
    }
  }
  if (const Json* comps = reader.field(doc, "components", "model")) {
    if (!comps->is_array()) {
      reader.fail("schema", "", "components must be a list");
    } else {
      for (std::size_t i = 0; i < comps->size(); ++i)
        model.components.push_back(reader.component((*comps)[i], i));
    }
  }
  model.outputs = reader.names(reader.field(doc, "outputs", "model"), "outputs", "outputs");
  if (!reader.problems.empty()) throw ModelError(reader.problems);
  return model;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

struct Arity {
  std::size_t min;
  std::size_t max;  // 0 means unbounded
};

Arity arity_of(Kind kind) {
  switch (kind) {
    case Kind::And:
    case Kind::Or:
    case Kind::Add:
    case Kind::Avg: return {2, 0};
    case Kind::Not:
    case Kind::Inv:
    case Kind::Abs: return {1, 1};
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Gcom:
    case Kind::Lcom: return {2, 2};
    case Kind::Lim: return {3, 3};
    case Kind::DNF:
    case Kind::CNF:
    case Kind::KooN:
    case Kind::Monotone: return {1, 0};
  }
  return {1, 0};
}

void check_attrs(const ComponentDecl& c, std::vector<Diagnostic>& out) {
  const Attrs& a = c.attrs;
  auto complain = [&](std::string code, std::string msg) {
    out.push_back({std::move(code), c.name, "component '" + c.name + "': " + msg});
  };
  auto unexpected = [&](bool present, const char* key) {
    if (present) complain("attrs-unexpected", std::string("attr '") + key +
                                                  "' does not apply to " +
                                                  to_string(c.kind));
  };
  std::size_t argc = c.args().size();
  switch (c.kind) {
    case Kind::KooN:
      unexpected(a.L.has_value(), "L");
      unexpected(a.K.has_value(), "K");
      unexpected(a.gradient.has_value(), "gradient");
      if (!a.k || !a.n) {
        complain("attrs-missing", "KooN requires attrs k and n");
      } else if (*a.n < 1 || *a.k < 1 || *a.k > *a.n) {
        complain("attrs-invalid", "KooN requires 1 <= k <= n, got k=" +
                                      std::to_string(*a.k) + ", n=" + std::to_string(*a.n));
      } else if (static_cast<std::size_t>(*a.n) != argc) {
        complain("arity", "KooN with n=" + std::to_string(*a.n) + " takes " +
                              std::to_string(*a.n) + " arguments, got " +
                              std::to_string(argc));
      }
      break;
    case Kind::DNF:
    case Kind::CNF:
      unexpected(a.k.has_value(), "k");
      unexpected(a.n.has_value(), "n");
      unexpected(a.gradient.has_value(), "gradient");
      if (!a.L || !a.K) {
        complain("attrs-missing", to_string(c.kind) + " requires attrs L and K");
      } else if (*a.L < 1 || *a.K < 1) {
        complain("attrs-invalid", to_string(c.kind) + " requires L, K >= 1");
      } else if (static_cast<std::size_t>(*a.L * *a.K) != argc) {
        complain("arity", to_string(c.kind) + " with L=" + std::to_string(*a.L) +
                              ", K=" + std::to_string(*a.K) + " takes " +
                              std::to_string(*a.L * *a.K) + " arguments, got " +
                              std::to_string(argc));
      }
      break;
    case Kind::Monotone:
      unexpected(a.k.has_value(), "k");
      unexpected(a.n.has_value(), "n");
      unexpected(a.L.has_value(), "L");
      unexpected(a.K.has_value(), "K");
      if (!a.gradient) {
        complain("attrs-missing", "Monotone requires attr gradient");
      } else if (a.gradient->size() != argc) {
        complain("attrs-invalid", "gradient lists " + std::to_string(a.gradient->size()) +
                                      " signs for " + std::to_string(argc) + " arguments");
      } else if (std::find(a.gradient->begin(), a.gradient->end(), Sign::Zero) !=
                 a.gradient->end()) {
        complain("attrs-invalid", "gradient signs must be strictly pos or neg");
      }
      break;
    default:
      if (!a.empty()) complain("attrs-unexpected", to_string(c.kind) + " takes no attrs");
  }
}

}  // namespace

std::vector<Diagnostic> validate(const SystemModel& model) {
  std::vector<Diagnostic> out;
  std::map<std::string, const VariableDecl*> vars;
  for (const auto& v : model.variables) {
    if (!vars.emplace(v.name, &v).second) {
      out.push_back({"duplicate-variable", v.name,
                     "variable '" + v.name + "' is declared more than once"});
    }
  }

  for (const auto& v : model.variables) {
    const Knowledge& k = v.known;
    for (const auto* val : {&k.reported, &k.intended}) {
      if (*val && type_of(**val) != v.type) {
        out.push_back({"known-type", v.name,
                       "variable '" + v.name + "': known value " + to_string(**val) +
                           " does not match type " + to_string(v.type)});
      }
    }
    if (k.sign && v.type == ValueType::Boolean) {
      out.push_back({"known-type", v.name,
                     "variable '" + v.name + "': sign knowledge needs a real variable"});
    }
    if (v.cls == VarClass::Certain && k.reported && k.intended &&
        !(*k.reported == *k.intended)) {
      out.push_back({"certain-deviates", v.name,
                     "variable '" + v.name +
                         "' is certain but its reported and intended values differ"});
    }
    if (k.sign && v.type == ValueType::Real) {
      for (const auto* val : {&k.reported, &k.intended}) {
        if (*val && type_of(**val) == ValueType::Real &&
            sign_of(std::get<double>(**val)) != *k.sign) {
          out.push_back({"known-conflict", v.name,
                         "variable '" + v.name + "': known value " + to_string(**val) +
                             " contradicts sign " + to_string(*k.sign)});
        }
      }
    }
  }

  std::set<std::string> component_names;
  std::map<std::string, std::string> producer;
  for (const auto& c : model.components) {
    std::string where = "component '" + c.name + "'";
    if (!component_names.insert(c.name).second) {
      out.push_back({"duplicate-component", c.name, where + " is declared more than once"});
    }

    Arity ar = arity_of(c.kind);
    std::vector<std::string> args = c.args();
    if (args.size() < ar.min || (ar.max && args.size() > ar.max)) {
      std::string expect = ar.max == ar.min ? std::to_string(ar.min)
                           : ar.max       ? std::to_string(ar.min) + ".." + std::to_string(ar.max)
                                          : "at least " + std::to_string(ar.min);
      out.push_back({"arity", c.name,
                     where + ": " + to_string(c.kind) + " takes " + expect +
                         " arguments, got " + std::to_string(args.size())});
    }
    if (c.outputs.size() != 1) {
      out.push_back({"arity", c.name,
                     where + ": " + to_string(c.kind) + " has exactly one output, got " +
                         std::to_string(c.outputs.size())});
    }
    check_attrs(c, out);

    auto check_ref = [&](const std::string& name, ValueType expected, const char* role) {
      auto it = vars.find(name);
      if (it == vars.end()) {
        out.push_back({"undeclared-variable", name,
                       where + ": " + role + " '" + name + "' is not declared"});
      } else if (it->second->type != expected) {
        out.push_back({"type-mismatch", name,
                       where + ": " + role + " '" + name + "' is " +
                           to_string(it->second->type) + " but " + to_string(c.kind) +
                           " expects " + to_string(expected)});
      }
    };
    for (const auto& a : args) check_ref(a, argument_type(c.kind), "argument");
    for (const auto& o : c.outputs) {
      check_ref(o, output_type(c.kind), "output");
      auto [it, fresh] = producer.emplace(o, c.name);
      if (!fresh) {
        out.push_back({"duplicate-producer", o,
                       "variable '" + o + "' is produced by both '" + it->second +
                           "' and '" + c.name + "'"});
      }
    }
  }

  if (model.outputs.empty()) {
    out.push_back({"no-outputs", "", "model declares no system outputs"});
  }
  for (const auto& o : model.outputs) {
    if (!vars.count(o)) {
      out.push_back({"undeclared-variable", o, "system output '" + o + "' is not declared"});
    } else if (!producer.count(o)) {
      out.push_back({"no-producer", o, "system output '" + o + "' has no producer"});
    }
  }
  return out;
}

SystemModel parse_model(std::string_view text) {
  SystemModel model = parse_model_unchecked(text);
  if (auto diagnostics = validate(model); !diagnostics.empty()) {
    throw ModelError(std::move(diagnostics));
  }
  return model;
}

SystemModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ModelError({{"io", path, "cannot read model file '" + path + "'"}});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

// ---------------------------------------------------------------------------
// Serialisation

namespace {

Json value_json(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  return std::get<double>(v);
}

}  // namespace

std::string serialize(const SystemModel& model) {
  Json doc = Json::object();
  Json vars = Json::array();
  for (const auto& v : model.variables) {
    Json j = {{"name", v.name}, {"type", to_string(v.type)}, {"class", to_string(v.cls)}};
    if (!v.known.empty()) {
      Json k = Json::object();
      if (v.known.sign) k["sign"] = to_string(*v.known.sign);
      if (v.known.reported) k["reported"] = value_json(*v.known.reported);
      if (v.known.intended) k["intended"] = value_json(*v.known.intended);
      j["known"] = std::move(k);
    }
    vars.push_back(std::move(j));
  }
  Json comps = Json::array();
  for (const auto& c : model.components) {
    Json j = {{"name", c.name},     {"kind", to_string(c.kind)}, {"inputs", c.inputs},
              {"params", c.params}, {"outputs", c.outputs}};
    if (!c.attrs.empty()) {
      Json a = Json::object();
      if (c.attrs.k) a["k"] = *c.attrs.k;
      if (c.attrs.n) a["n"] = *c.attrs.n;
      if (c.attrs.L) a["L"] = *c.attrs.L;
      if (c.attrs.K) a["K"] = *c.attrs.K;
      if (c.attrs.gradient) {
        Json g = Json::array();
        for (Sign s : *c.attrs.gradient) g.push_back(to_string(s));
        a["gradient"] = std::move(g);
      }
      j["attrs"] = std::move(a);
    }
    comps.push_back(std::move(j));
  }
  doc["variables"] = std::move(vars);
  doc["components"] = std::move(comps);
  doc["outputs"] = model.outputs;
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Graph structure

namespace {

struct Graph {
  std::vector<std::string> names;  // sorted component names
  std::map<std::string, std::size_t> index;
  std::vector<FeedbackEdge> edges;  // sorted, unique
};

Graph build_graph(const SystemModel& model) {
  Graph g;
  for (const auto& c : model.components) g.names.push_back(c.name);
  std::sort(g.names.begin(), g.names.end());
  g.names.erase(std::unique(g.names.begin(), g.names.end()), g.names.end());
  for (std::size_t i = 0; i < g.names.size(); ++i) g.index[g.names[i]] = i;
  std::set<FeedbackEdge> edges;
  for (const auto& c : model.components) {
    for (const auto& a : c.args()) {
      if (const ComponentDecl* p = model.producer_of(a)) {
        edges.insert({a, p->name, c.name});
      }
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

using Adjacency = std::vector<std::vector<std::size_t>>;

Adjacency adjacency(const Graph& g, const std::vector<bool>& removed) {
  Adjacency adj(g.names.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (removed[e]) continue;
    adj[g.index.at(g.edges[e].producer)].push_back(g.index.at(g.edges[e].consumer));
  }
  return adj;
}

// Tarjan's algorithm; returns the component id of each node.
std::vector<std::size_t> strongly_connected(const Adjacency& adj, std::size_t& count) {
  std::size_t n = adj.size();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next = 0;
  count = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = next++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (index[w] == SIZE_MAX) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = count;
      } while (w != v);
      ++count;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == SIZE_MAX) visit(v);
  return comp;
}

bool acyclic(const Adjacency& adj) {
  std::vector<std::size_t> indegree(adj.size(), 0);
  for (const auto& outs : adj)
    for (std::size_t w : outs) ++indegree[w];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t w : adj[v])
      if (--indegree[w] == 0) ready.push_back(w);
  }
  return seen == adj.size();
}

}  // namespace

std::vector<FeedbackEdge> detect_loops(const SystemModel& model) {
  Graph g = build_graph(model);
  std::vector<bool> removed(g.edges.size(), false);

  while (true) {
    Adjacency adj = adjacency(g, removed);
    std::size_t count = 0;
    auto comp = strongly_connected(adj, count);
    std::vector<std::size_t> members(count, 0);
    for (std::size_t c : comp) ++members[c];
    bool cut = false;
    for (std::size_t scc = 0; scc < count; ++scc) {
      // Names are sorted, so the first node found is the least one.
      std::size_t least = SIZE_MAX;
      for (std::size_t v = 0; v < comp.size() && least == SIZE_MAX; ++v)
        if (comp[v] == scc) least = v;
      bool self_loop = std::find(adj[least].begin(), adj[least].end(), least) !=
                       adj[least].end();
      if (members[scc] < 2 && !self_loop) continue;
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (removed[e]) continue;
        std::size_t from = g.index.at(g.edges[e].producer);
        std::size_t to = g.index.at(g.edges[e].consumer);
        if (to == least && comp[from] == scc) {
          removed[e] = true;
          cut = true;
        }
      }
    }
    if (!cut) break;
  }

  // Put back every cut edge that is not needed to keep the graph acyclic.
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!removed[e]) continue;
    removed[e] = false;
    if (!acyclic(adjacency(g, removed))) removed[e] = true;
  }

  std::vector<FeedbackEdge> out;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (removed[e]) out.push_back(g.edges[e]);
  return out;
}

std::vector<const ComponentDecl*> topological_order(
    const SystemModel& model, const std::vector<FeedbackEdge>& ignored) {
  std::set<FeedbackEdge> skip(ignored.begin(), ignored.end());
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < model.components.size(); ++i)
    pos[model.components[i].name] = i;

  std::size_t n = model.components.size();
  std::vector<std::set<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const ComponentDecl& c = model.components[i];
    for (const auto& a : c.args()) {
      const ComponentDecl* p = model.producer_of(a);
      if (!p || skip.count({a, p->name, c.name})) continue;
      if (succ[pos[p->name]].insert(i).second) ++indegree[i];
    }
  }
  // Kahn's algorithm, always taking the earliest-declared ready component.
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.insert(i);
  std::vector<const ComponentDecl*> order;
  while (!ready.empty()) {
    std::size_t i = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(&model.components[i]);
    for (std::size_t j : succ[i])
      if (--indegree[j] == 0) ready.insert(j);
  }
  if (order.size() != n) {
    throw Error(kModule, "model contains a loop; break it before ordering");
  }
  return order;
}

}  // namespace fmr
