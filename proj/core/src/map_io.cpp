#include "henon/map_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "henon/errors.hpp"
#include "json.hpp"

namespace henon {

namespace {

Complex read_scalar(const nlohmann::json& v, const std::string& where) {
  if (v.is_number()) return Complex{v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Complex{v[0].get<double>(), v[1].get<double>()};
  throw InvalidFactor(where + " must be a number or [re, im]");
}

}  // namespace

HenonMap load_map_json(std::string_view text, const MakeOptions& opts) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidFactor(std::string("map JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("factors") || !doc["factors"].is_array() ||
      doc["factors"].empty())
    throw InvalidFactor("map JSON: need an object with a nonempty \"factors\" array");

  std::vector<HenonFactor> factors;
  std::size_t k = 0;
  for (const auto& item : doc["factors"]) {
    std::string tag = "factor " + std::to_string(k);
    if (!item.is_object()) throw InvalidFactor(tag + " must be an object");
    for (const char* field : {"b", "delta", "p"})
      if (!item.contains(field))
        throw InvalidFactor(tag + ": missing field '" + field + "'");
    HenonFactor f;
    f.b = read_scalar(item["b"], tag + ": field 'b'");
    f.delta = read_scalar(item["delta"], tag + ": field 'delta'");
    if (!item["p"].is_string()) throw InvalidFactor(tag + ": field 'p' must be a string");
    try {
      f.p = parse_polynomial(item["p"].get<std::string>());
    } catch (const SyntaxError& e) {
      throw InvalidFactor(tag + ": p: " + e.what() + " (column " +
                          std::to_string(e.position() + 1) + ")");
    } catch (const NegativeExponent& e) {
      throw InvalidFactor(tag + ": p: " + e.what());
    }
    factors.push_back(std::move(f));
    ++k;
  }
  return make_henon(std::move(factors), opts);
}

HenonMap load_map_file(const std::string& path, const MakeOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidFactor("cannot read map file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_map_json(buf.str(), opts);
}

}  // namespace henon
