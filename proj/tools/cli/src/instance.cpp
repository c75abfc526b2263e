#include "bratu_cli/instance.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace bratu::cli {

using nlohmann::json;

namespace {

Matrix read_matrix(const json& doc, const char* key, Index rows, Index cols) {
  if (!doc.contains(key)) throw InputError(std::string("instance: missing field '") + key + "'");
  const json& arr = doc.at(key);
  if (!arr.is_array() || arr.size() != static_cast<std::size_t>(rows * cols)) {
    throw InputError(std::string("instance: field '") + key + "' must be an array of " +
                     std::to_string(rows * cols) + " numbers");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const json& v = arr[static_cast<std::size_t>(i * cols + j)];
      if (!v.is_number()) throw InputError(std::string("instance: non-numeric entry in '") + key + "'");
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

nlohmann::ordered_json flat(const Matrix& m) {
  auto arr = nlohmann::ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  }
  return arr;
}

Index read_count(const json& doc, const char* key, Index min) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer()) {
    throw InputError(std::string("instance: '") + key + "' must be an integer");
  }
  const auto v = doc.at(key).get<std::int64_t>();
  if (v < min || v > 4096) throw InputError(std::string("instance: '") + key + "' out of range");
  return static_cast<Index>(v);
}

}  // namespace

GeneratorBDI Instance::bdi() const {
  if (type != InstanceType::bdi) throw InputError("instance is not of type bdi");
  return GeneratorBDI::make(b, a, c);
}

GeneratorCI Instance::ci() const {
  if (type != InstanceType::ci) throw InputError("instance is not of type ci");
  return GeneratorCI::make(b, c);
}

Instance Instance::from(const GeneratorBDI& gen, std::optional<std::uint64_t> seed) {
  Instance inst;
  inst.type = InstanceType::bdi;
  inst.n = gen.n();
  inst.r = gen.r();
  inst.b = gen.b();
  inst.a = gen.a();
  inst.c = gen.c();
  inst.seed = seed;
  return inst;
}

Instance Instance::from(const GeneratorCI& gen, std::optional<std::uint64_t> seed) {
  Instance inst;
  inst.type = InstanceType::ci;
  inst.n = gen.n();
  inst.b = gen.b();
  inst.c = gen.c();
  inst.seed = seed;
  return inst;
}

std::string type_name(InstanceType t) { return t == InstanceType::bdi ? "bdi" : "ci"; }

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("instance: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("type") || !doc.at("type").is_string()) {
    throw InputError("instance: missing string field 'type'");
  }
  Instance inst;
  const auto type = doc.at("type").get<std::string>();
  if (type == "bdi") {
    inst.type = InstanceType::bdi;
  } else if (type == "ci") {
    inst.type = InstanceType::ci;
  } else {
    throw InputError("instance: type must be 'bdi' or 'ci'");
  }
  inst.n = read_count(doc, "n", 1);
  inst.b = read_matrix(doc, "b", inst.n, inst.n);
  inst.c = read_matrix(doc, "c", inst.n, inst.n);
  if (inst.is_bdi()) {
    inst.r = read_count(doc, "r", 0);
    inst.a = read_matrix(doc, "a", inst.n, inst.r);
  }
  if (doc.contains("seed") && !doc.at("seed").is_null()) {
    if (!doc.at("seed").is_number_unsigned()) throw InputError("instance: 'seed' must be a nonnegative integer");
    inst.seed = doc.at("seed").get<std::uint64_t>();
  }
  try {
    if (inst.is_bdi()) {
      (void)inst.bdi();
    } else {
      (void)inst.ci();
    }
  } catch (const Error& e) {
    throw InputError(std::string("instance: ") + e.what());
  }
  return inst;
}

Instance read_instance(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    return parse_instance(std::string(std::istreambuf_iterator<char>(in), {}));
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_instance(buf.str());
}

std::string dump_instance(const Instance& inst) {
  nlohmann::ordered_json doc;
  doc["type"] = type_name(inst.type);
  doc["n"] = inst.n;
  if (inst.is_bdi()) doc["r"] = inst.r;
  doc["b"] = flat(inst.b);
  if (inst.is_bdi()) doc["a"] = flat(inst.a);
  doc["c"] = flat(inst.c);
  if (inst.seed) doc["seed"] = *inst.seed;
  return doc.dump(2) + "\n";
}

}  // namespace bratu::cli
