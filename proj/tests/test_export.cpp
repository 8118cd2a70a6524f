#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "tpn/export.hpp"
#include "tpn/parser.hpp"
#include "tpn/product.hpp"
#include "support.hpp"

using namespace tpn;
using nlohmann::json;
using testsupport::fixture;
using testsupport::read_file;

namespace {

Ptpn reference_product() {
  Ptpn n1 = parse_net(read_file(fixture("n1.net")));
  Ptpn n2 = parse_net(read_file(fixture("n2.net")));
  return binary_product(n1, n2, {"a", "b"}).ptpn;
}

// Small structural validator covering the subset of json-schema the report
// schema uses: type, required, properties, additionalProperties, enum, items,
// minimum.
bool conforms(const json& schema, const json& v) {
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    if (t == "object" && !v.is_object()) return false;
    if (t == "string" && !v.is_string()) return false;
    if (t == "boolean" && !v.is_boolean()) return false;
    if (t == "array" && !v.is_array()) return false;
    if (t == "integer" && !v.is_number_integer() && !v.is_number_unsigned()) return false;
    if (t == "number" && !v.is_number()) return false;
  }
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& e : schema["enum"]) hit = hit || e == v;
    if (!hit) return false;
  }
  if (schema.contains("minimum") && v.is_number()) {
    if (v.get<double>() < schema["minimum"].get<double>()) return false;
  }
  if (v.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!v.contains(k.get<std::string>())) return false;
    const json props = schema.value("properties", json::object());
    bool extra_ok = schema.value("additionalProperties", true);
    for (const auto& [key, val] : v.items()) {
      if (props.contains(key)) {
        if (!conforms(props[key], val)) return false;
      } else if (!extra_ok) {
        return false;
      }
    }
  }
  if (v.is_array() && schema.contains("items"))
    for (const auto& item : v)
      if (!conforms(schema["items"], item)) return false;
  return true;
}

json report_schema() { return json::parse(read_file(TPN_SCHEMA_PATH)); }

}  // namespace

TEST_CASE("aut output lists every edge under the declared counts") {
  Ptpn p = reference_product();
  auto res = build_scg(p);
  std::string aut = to_aut(p, res.graph);

  std::istringstream in(aut);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "des (0, 3, 4)");

  int edges = 0, taus = 0;
  while (std::getline(in, line)) {
    ++edges;
    CHECK(line.front() == '(');
    CHECK(line.back() == ')');
    CHECK(line.find('"') != std::string::npos);
    if (line.find("\"tau\"") != std::string::npos) ++taus;
  }
  CHECK(edges == 3);
  CHECK(taus == 1);  // exactly the silent branch
  CHECK(aut.find("\"a\"") != std::string::npos);
  CHECK(aut.find("\"b\"") != std::string::npos);
}

TEST_CASE("dot output marks dead and unexpanded classes") {
  Ptpn p = reference_product();
  auto res = build_scg(p);
  std::string dot = to_dot(p, res.graph, res.expanded);
  CHECK(dot.find("digraph") != std::string::npos);
  // Two dead classes in the complete graph, none dashed.
  CHECK(dot.find("n2 [label=\"2\", shape=doublecircle") != std::string::npos);
  CHECK(dot.find("n3 [label=\"3\", shape=doublecircle") != std::string::npos);
  CHECK(dot.find("style=dashed") == std::string::npos);
  CHECK(dot.find("label=\"tau\"") != std::string::npos);

  // A truncated build dashes whatever was not expanded.
  Ptpn gen = parse_net("net g\npl b (0)\ntr mk [1,1] -> b\n");
  auto cut = build_scg(gen, {.max_classes = 3});
  REQUIRE_FALSE(cut.complete);
  std::string dot2 = to_dot(gen, cut.graph, cut.expanded);
  CHECK(dot2.find("style=dashed") != std::string::npos);
  // Frontier classes are pending, not dead.
  CHECK(dot2.find("doublecircle") == std::string::npos);
}

TEST_CASE("reports conform to the pinned schema") {
  Ptpn p = reference_product();
  auto res = build_scg(p);
  json schema = report_schema();

  json plain = json::parse(report_json(p, res, std::nullopt));
  CHECK(conforms(schema, plain));
  CHECK(plain["net"] == "n1.n2");
  CHECK(plain["classes"] == 4);
  CHECK(plain["edges"] == 3);
  CHECK(plain["complete"] == true);
  CHECK_FALSE(plain.contains("verdict"));

  auto rep = verdict_of(p, res, AcceptanceSpec{"b", "TIMEOUT", {{"q2", 1}, {"p2", 1}}});
  json with_verdict = json::parse(report_json(p, res, rep));
  CHECK(conforms(schema, with_verdict));
  CHECK(with_verdict["verdict"] == "TimeLock");
  CHECK(with_verdict["witness_path"] == json::array({0, 1, 3}));
}

TEST_CASE("the schema validator rejects deviations") {
  Ptpn p = reference_product();
  auto res = build_scg(p);
  json schema = report_schema();
  json good = json::parse(report_json(p, res, std::nullopt));

  json missing = good;
  missing.erase("classes");
  CHECK_FALSE(conforms(schema, missing));

  json extra = good;
  extra["surprise"] = 1;
  CHECK_FALSE(conforms(schema, extra));

  json wrong_type = good;
  wrong_type["complete"] = "yes";
  CHECK_FALSE(conforms(schema, wrong_type));

  json negative = good;
  negative["classes"] = -1;
  CHECK_FALSE(conforms(schema, negative));

  json bad_verdict = good;
  bad_verdict["verdict"] = "Maybe";
  CHECK_FALSE(conforms(schema, bad_verdict));
}
