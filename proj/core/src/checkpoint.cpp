#include <fstream>
#include <system_error>

#include <json.hpp>

#include "pqcat/errors.hpp"
#include "pqcat/squarefree.hpp"

namespace pqcat {
namespace {

BigInt parse_decimal(const nlohmann::json& value, const char* field) {
  if (!value.is_string()) {
    throw DomainError(std::string("checkpoint field '") + field + "' must be a decimal string");
  }
  BigInt out;
  if (out.set_str(value.get<std::string>(), 10) != 0 || sgn(out) < 0) {
    throw DomainError(std::string("checkpoint field '") + field + "' is not a decimal integer");
  }
  return out;
}

}  // namespace

std::string format_checkpoint(const Checkpoint& checkpoint) {
  nlohmann::json record;
  record["p"] = checkpoint.p;
  record["q"] = checkpoint.q;
  record["bound"] = checkpoint.bound.get_str();
  record["last_n"] = checkpoint.last_n.get_str();
  auto hits = nlohmann::json::array();
  for (const auto& hit : checkpoint.hits) hits.push_back(hit.get_str());
  record["hits"] = std::move(hits);
  return record.dump();
}

Checkpoint parse_checkpoint(const std::string& line) {
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("malformed checkpoint: ") + e.what());
  }
  for (const char* field : {"p", "q", "bound", "last_n", "hits"}) {
    if (!record.contains(field)) {
      throw DomainError(std::string("checkpoint is missing field '") + field + "'");
    }
  }
  if (!record["p"].is_number_unsigned() || !record["q"].is_number_unsigned() ||
      !record["hits"].is_array()) {
    throw DomainError("checkpoint fields p, q or hits have the wrong type");
  }
  Checkpoint out;
  out.p = record["p"].get<std::uint64_t>();
  out.q = record["q"].get<unsigned>();
  out.bound = parse_decimal(record["bound"], "bound");
  out.last_n = parse_decimal(record["last_n"], "last_n");
  for (const auto& hit : record["hits"]) out.hits.push_back(parse_decimal(hit, "hits"));
  return out;
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  std::filesystem::path staging = path;
  staging += ".tmp";
  {
    std::ofstream out(staging, std::ios::trunc);
    if (!out) throw ResourceError("cannot write checkpoint " + staging.string());
    out << format_checkpoint(checkpoint) << '\n';
    if (!out) throw ResourceError("failed writing checkpoint " + staging.string());
  }
  std::error_code ec;
  std::filesystem::rename(staging, path, ec);
  if (ec) throw ResourceError("cannot move checkpoint into place: " + ec.message());
}

std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  std::getline(in, line);
  return parse_checkpoint(line);
}

}  // namespace pqcat
