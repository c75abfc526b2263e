#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <bratu/bdi_geometry.hpp>
#include <bratu/ci.hpp>

namespace bratu::cli {

/// Malformed input (bad JSON, missing fields, shape or symmetry violations).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InstanceType { bdi, ci };

struct Instance {
  InstanceType type = InstanceType::bdi;
  Index n = 0;
  Index r = 0;
  Matrix b, a, c;
  std::optional<std::uint64_t> seed;

  bool is_bdi() const noexcept { return type == InstanceType::bdi; }
  GeneratorBDI bdi() const;
  GeneratorCI ci() const;

  static Instance from(const GeneratorBDI& gen, std::optional<std::uint64_t> seed = {});
  static Instance from(const GeneratorCI& gen, std::optional<std::uint64_t> seed = {});
};

std::string type_name(InstanceType t);

/// Throws InputError on any violation, including generator validation.
Instance parse_instance(const std::string& text);
Instance read_instance(const std::string& path, std::istream& in);

/// Pretty-printed JSON, matrices flat row-major, terminated by a newline.
std::string dump_instance(const Instance& inst);

}  // namespace bratu::cli
