#include "permusmooth/result_document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "permusmooth/errors.hpp"

namespace permusmooth {

namespace {

using Json = nlohmann::ordered_json;

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int k = 15; k >= 0; --k) {
    buf[15 - k] = digits[(h >> (4 * k)) & 0xf];
  }
  buf[16] = '\0';
  return std::string(buf);
}

Json config_to_json(const ConfigEcho& c) {
  Json j;
  j["mode"] = c.mode;
  j["epsilon"] = c.epsilon;
  j["tol"] = c.tol ? Json(*c.tol) : Json(nullptr);
  j["max_iters"] = c.max_iters ? Json(*c.max_iters) : Json(nullptr);
  j["init_mode"] = c.init_mode;
  if (c.pinned) {
    j["pinned"] = Json{{"column", c.pinned->dim + 1}, {"weight", c.pinned->value}};
  } else {
    j["pinned"] = nullptr;
  }
  j["seed"] = c.seed;
  j["restarts"] = c.restarts;
  j["periodic"] = c.periodic;
  j["workers"] = c.workers;
  return j;
}

ConfigEcho config_from_json(const Json& j) {
  ConfigEcho c;
  c.mode = j.at("mode").get<std::string>();
  c.epsilon = j.at("epsilon").get<double>();
  if (!j.at("tol").is_null()) c.tol = j.at("tol").get<double>();
  if (!j.at("max_iters").is_null()) c.max_iters = j.at("max_iters").get<std::size_t>();
  c.init_mode = j.at("init_mode").get<std::string>();
  if (!j.at("pinned").is_null()) {
    PinnedWeight p;
    p.dim = j.at("pinned").at("column").get<std::size_t>() - 1;
    p.value = j.at("pinned").at("weight").get<double>();
    c.pinned = p;
  }
  c.seed = j.at("seed").get<std::uint64_t>();
  c.restarts = j.at("restarts").get<std::size_t>();
  c.periodic = j.at("periodic").get<bool>();
  c.workers = j.at("workers").get<std::size_t>();
  return c;
}

template <typename T>
void require_key(const Json& j, const char* key, const T&) {
  if (!j.contains(key)) throw SchemaError(std::string("result document is missing '") + key + "'");
}

}  // namespace

DataFingerprint DataFingerprint::of(const DataMatrix& x) {
  return DataFingerprint{x.rows(), x.cols(), hash_hex(x.content_hash())};
}

void save_result(const ResultDocument& doc, const std::string& path) {
  Json j;
  j["schema_version"] = doc.schema_version;
  j["data_fingerprint"] = Json{{"rows", doc.data_fingerprint.rows},
                               {"cols", doc.data_fingerprint.cols},
                               {"content_hash", doc.data_fingerprint.content_hash}};
  j["config"] = config_to_json(doc.config);
  Json sigma = Json::array();
  for (std::size_t v : doc.sigma) sigma.push_back(v + 1);  // 1-based on disk
  j["sigma"] = std::move(sigma);
  j["w"] = doc.w;
  j["trace"] = doc.trace;
  j["breakdown"] = Json{{"s_per_dim", doc.breakdown.s_per_dim},
                        {"expected_nonsmoothness", doc.breakdown.expected_nonsmoothness},
                        {"entropy_term", doc.breakdown.entropy_term},
                        {"f_total", doc.breakdown.f_total},
                        {"epsilon", doc.breakdown.epsilon}};
  j["iterations"] = doc.iterations;
  j["converged"] = doc.converged;
  j["restart_index"] = doc.restart_index;
  j["timings"] = Json{{"io_seconds", doc.timings.io_seconds},
                      {"fit_seconds", doc.timings.fit_seconds},
                      {"total_seconds", doc.timings.total_seconds}};

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + path + "'");
  file << j.dump(2) << '\n';
  if (!file) throw IoError("failed while writing '" + path + "'");
}

LoadedResult load_result(const std::string& path, const DataMatrix* attach_to) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "'");
  Json j;
  try {
    file >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("malformed result document '" + path + "': " + e.what());
  }

  if (!j.contains("schema_version")) throw SchemaError("result document is missing 'schema_version'");
  const int version = j.at("schema_version").get<int>();
  if (version != ResultDocument::kSchemaVersion) {
    throw SchemaError("unsupported schema_version " + std::to_string(version) + ", expected " +
                      std::to_string(ResultDocument::kSchemaVersion));
  }
  for (const char* key :
       {"data_fingerprint", "config", "sigma", "w", "trace", "breakdown", "iterations",
        "converged", "restart_index", "timings"}) {
    if (!j.contains(key)) {
      throw SchemaError(std::string("result document is missing '") + key + "'");
    }
  }

  LoadedResult out;
  ResultDocument& doc = out.doc;
  doc.schema_version = version;
  try {
    const Json& fp = j.at("data_fingerprint");
    doc.data_fingerprint.rows = fp.at("rows").get<std::size_t>();
    doc.data_fingerprint.cols = fp.at("cols").get<std::size_t>();
    doc.data_fingerprint.content_hash = fp.at("content_hash").get<std::string>();
    doc.config = config_from_json(j.at("config"));
    for (const auto& v : j.at("sigma")) {
      const std::size_t idx = v.get<std::size_t>();
      if (idx < 1) throw SchemaError("sigma indices are 1-based");
      doc.sigma.push_back(idx - 1);
    }
    doc.w = j.at("w").get<std::vector<double>>();
    doc.trace = j.at("trace").get<std::vector<double>>();
    const Json& b = j.at("breakdown");
    doc.breakdown.s_per_dim = b.at("s_per_dim").get<std::vector<double>>();
    doc.breakdown.expected_nonsmoothness = b.at("expected_nonsmoothness").get<double>();
    doc.breakdown.entropy_term = b.at("entropy_term").get<double>();
    doc.breakdown.f_total = b.at("f_total").get<double>();
    doc.breakdown.epsilon = b.at("epsilon").get<double>();
    doc.iterations = j.at("iterations").get<std::size_t>();
    doc.converged = j.at("converged").get<bool>();
    doc.restart_index = j.at("restart_index").get<std::size_t>();
    const Json& t = j.at("timings");
    doc.timings.io_seconds = t.at("io_seconds").get<double>();
    doc.timings.fit_seconds = t.at("fit_seconds").get<double>();
    doc.timings.total_seconds = t.at("total_seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("malformed result document '" + path + "': " + e.what());
  }

  if (attach_to != nullptr) {
    out.fingerprint_mismatch = !(doc.data_fingerprint == DataFingerprint::of(*attach_to));
  }
  return out;
}

}  // namespace permusmooth
