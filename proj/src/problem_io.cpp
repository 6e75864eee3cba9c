#include "yamabe/problem_io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace yamabe {

namespace {

using nlohmann::json;

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string json_escape(const std::string& s) {
  return json(s).dump();
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ParseError(path + ": unknown field '" + item.key() + "'");
    }
  }
}

const json& require_field(const json& obj, const std::string& path,
                          const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(path + ": missing field '" + key + "'");
  }
  return *it;
}

double require_number(const json& v, const std::string& path) {
  if (!v.is_number()) {
    throw ParseError(path + ": expected a number");
  }
  return v.get<double>();
}

std::string require_string(const json& v, const std::string& path) {
  if (!v.is_string()) {
    throw ParseError(path + ": expected a string");
  }
  return v.get<std::string>();
}

const json& require_object(const json& v, const std::string& path) {
  if (!v.is_object()) {
    throw ParseError(path + ": expected an object");
  }
  return v;
}

const json& require_array(const json& v, const std::string& path) {
  if (!v.is_array()) {
    throw ParseError(path + ": expected an array");
  }
  return v;
}

SolveMode parse_mode(const std::string& s, const std::string& path) {
  if (s == "mu_form") {
    return SolveMode::mu_form;
  }
  if (s == "rescale") {
    return SolveMode::rescale;
  }
  if (s == "normalized") {
    return SolveMode::normalized;
  }
  throw ParseError(path + ": mode must be mu_form, rescale or normalized");
}

LaplacianVariant parse_variant(const std::string& s, const std::string& path) {
  if (s == "edge") {
    return LaplacianVariant::edge;
  }
  if (s == "gamma") {
    return LaplacianVariant::gamma;
  }
  throw ParseError(path + ": variant must be edge or gamma");
}

CheckStatus parse_status(const std::string& s, const std::string& path) {
  if (s == "pass") {
    return CheckStatus::pass;
  }
  if (s == "fail") {
    return CheckStatus::fail;
  }
  if (s == "not_applicable") {
    return CheckStatus::not_applicable;
  }
  throw ParseError(path + ": unknown check status '" + s + "'");
}

}  // namespace

ProblemInstance parse_problem_json(const std::string& text,
                                   const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  require_object(root, origin);
  reject_unknown(root, origin, {"graph", "exponents", "mode", "variant",
                                "lambda"});

  const json& jgraph = require_object(require_field(root, origin, "graph"),
                                      origin + ".graph");
  reject_unknown(jgraph, origin + ".graph", {"vertices", "edges"});

  std::vector<WeightedGraph::VertexRecord> vertex_records;
  std::vector<std::pair<std::string, std::pair<double, double>>> coeffs;
  const json& jverts = require_array(
      require_field(jgraph, origin + ".graph", "vertices"),
      origin + ".graph.vertices");
  for (std::size_t i = 0; i < jverts.size(); ++i) {
    const std::string path =
        origin + ".graph.vertices[" + std::to_string(i) + "]";
    const json& jv = require_object(jverts[i], path);
    reject_unknown(jv, path, {"id", "mu", "h", "f"});
    const std::string id = require_string(require_field(jv, path, "id"),
                                          path + ".id");
    const double mu = require_number(require_field(jv, path, "mu"),
                                     path + ".mu");
    const double h = require_number(require_field(jv, path, "h"), path + ".h");
    const double f = require_number(require_field(jv, path, "f"), path + ".f");
    vertex_records.emplace_back(id, mu);
    coeffs.emplace_back(id, std::make_pair(h, f));
  }

  std::vector<WeightedGraph::EdgeRecord> edge_records;
  const json& jedges = require_array(
      require_field(jgraph, origin + ".graph", "edges"),
      origin + ".graph.edges");
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const std::string path = origin + ".graph.edges[" + std::to_string(i) + "]";
    const json& je = require_object(jedges[i], path);
    reject_unknown(je, path, {"a", "b", "w"});
    edge_records.emplace_back(
        require_string(require_field(je, path, "a"), path + ".a"),
        require_string(require_field(je, path, "b"), path + ".b"),
        require_number(require_field(je, path, "w"), path + ".w"));
  }

  ProblemInstance inst;
  inst.graph = WeightedGraph::build(vertex_records, edge_records);

  std::vector<double> h(inst.graph.vertex_count());
  std::vector<double> f(inst.graph.vertex_count());
  for (const auto& [id, hf] : coeffs) {
    const std::size_t idx = inst.graph.index_of(id);
    h[idx] = hf.first;
    f[idx] = hf.second;
  }
  inst.spec.h = VertexFunction(std::move(h));
  inst.spec.f = VertexFunction(std::move(f));

  const json& jmode = require_field(root, origin, "mode");
  inst.spec.mode = parse_mode(require_string(jmode, origin + ".mode"),
                              origin + ".mode");
  if (root.contains("variant")) {
    inst.spec.variant = parse_variant(
        require_string(root["variant"], origin + ".variant"),
        origin + ".variant");
  }

  const json& jexp = require_object(require_field(root, origin, "exponents"),
                                    origin + ".exponents");
  reject_unknown(jexp, origin + ".exponents", {"p", "q", "alpha"});
  inst.spec.p = require_number(require_field(jexp, origin + ".exponents", "p"),
                               origin + ".exponents.p");
  inst.spec.alpha =
      require_number(require_field(jexp, origin + ".exponents", "alpha"),
                     origin + ".exponents.alpha");
  if (jexp.contains("q")) {
    inst.spec.q = require_number(jexp["q"], origin + ".exponents.q");
  } else if (inst.spec.mode == SolveMode::normalized) {
    inst.spec.q = inst.spec.p;  // unused exponent; pin it to p
  } else {
    throw ParseError(origin + ".exponents: missing field 'q'");
  }

  if (root.contains("lambda")) {
    inst.lambda_raw = require_number(root["lambda"], origin + ".lambda");
  }
  switch (inst.spec.mode) {
    case SolveMode::mu_form:
      if (!inst.lambda_raw) {
        throw ParseError(origin + ": mu_form mode requires a lambda field");
      }
      inst.lambda = *inst.lambda_raw;
      break;
    case SolveMode::rescale:
      inst.lambda = inst.lambda_raw.value_or(-1.0);
      break;
    case SolveMode::normalized:
      inst.lambda = 0.0;  // ignored by the solve
      break;
  }

  inst.spec.validate(inst.graph);
  return inst;
}

ProblemInstance load_problem_file(const std::string& path) {
  return parse_problem_json(read_text_file(path), path);
}

std::string problem_digest(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("digest: ") + e.what());
  }
  const std::string canonical = root.dump();

  unsigned char hash[EVP_MAX_MD_SIZE];
  unsigned int hash_len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr ||
      EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, canonical.data(), canonical.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, hash, &hash_len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 digest failed");
  }
  EVP_MD_CTX_free(ctx);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * hash_len);
  for (unsigned int i = 0; i < hash_len; ++i) {
    out.push_back(hex[hash[i] >> 4]);
    out.push_back(hex[hash[i] & 0xf]);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot read file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot write file '" + path + "'");
  }
  out << content;
  if (!out) {
    throw Error("write to '" + path + "' failed");
  }
}

Certificate make_certificate(const WeightedGraph& g, const ProblemSpec& prob,
                             const SolveResult& result,
                             const VerificationReport& report,
                             const std::string& input_digest, double tol) {
  Certificate cert;
  cert.input_digest = input_digest;
  cert.mode = result.mode;
  cert.variant = prob.variant;
  cert.lambda = result.lambda;
  cert.mu = result.mu;
  cert.energy = result.energy;
  cert.tol = tol;
  cert.iterations = result.iterations;
  cert.restarts_used = result.restarts_used;
  cert.residual_max = report.residual_max;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    cert.solution.emplace_back(g.vertex_id(i), result.u[i]);
  }
  cert.checks = report.checks;
  return cert;
}

std::string certificate_to_json(const Certificate& cert) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"tool\": " << json_escape(cert.tool) << ",\n";
  out << "  \"tool_version\": " << json_escape(cert.tool_version) << ",\n";
  out << "  \"input_digest\": " << json_escape(cert.input_digest) << ",\n";
  out << "  \"mode\": " << json_escape(to_string(cert.mode)) << ",\n";
  out << "  \"variant\": " << json_escape(to_string(cert.variant)) << ",\n";
  out << "  \"lambda\": " << format_real(cert.lambda) << ",\n";
  out << "  \"mu\": " << format_real(cert.mu) << ",\n";
  out << "  \"energy\": " << format_real(cert.energy) << ",\n";
  out << "  \"tol\": " << format_real(cert.tol) << ",\n";
  out << "  \"iterations\": " << cert.iterations << ",\n";
  out << "  \"restarts_used\": " << cert.restarts_used << ",\n";
  out << "  \"residual_max\": " << format_real(cert.residual_max) << ",\n";
  out << "  \"solution\": {";
  for (std::size_t i = 0; i < cert.solution.size(); ++i) {
    if (i > 0) {
      out << ",";
    }
    out << "\n    " << json_escape(cert.solution[i].first) << ": "
        << format_real(cert.solution[i].second);
  }
  out << "\n  },\n";
  out << "  \"checks\": [";
  for (std::size_t i = 0; i < cert.checks.size(); ++i) {
    const Check& c = cert.checks[i];
    if (i > 0) {
      out << ",";
    }
    out << "\n    {\"name\": " << json_escape(c.name)
        << ", \"status\": " << json_escape(to_string(c.status))
        << ", \"measured\": " << format_real(c.measured)
        << ", \"bound\": " << format_real(c.bound)
        << ", \"slack\": " << format_real(c.slack)
        << ", \"source\": " << json_escape(c.source) << "}";
  }
  out << "\n  ]\n";
  out << "}\n";
  return out.str();
}

Certificate parse_certificate_json(const std::string& text,
                                   const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  require_object(root, origin);
  reject_unknown(root, origin,
                 {"tool", "tool_version", "input_digest", "mode", "variant",
                  "lambda", "mu", "energy", "tol", "iterations",
                  "restarts_used", "residual_max", "solution", "checks"});

  Certificate cert;
  cert.tool = require_string(require_field(root, origin, "tool"),
                             origin + ".tool");
  cert.tool_version = require_string(
      require_field(root, origin, "tool_version"), origin + ".tool_version");
  cert.input_digest = require_string(
      require_field(root, origin, "input_digest"), origin + ".input_digest");
  cert.mode = parse_mode(
      require_string(require_field(root, origin, "mode"), origin + ".mode"),
      origin + ".mode");
  cert.variant = parse_variant(
      require_string(require_field(root, origin, "variant"),
                     origin + ".variant"),
      origin + ".variant");
  cert.lambda = require_number(require_field(root, origin, "lambda"),
                               origin + ".lambda");
  cert.mu = require_number(require_field(root, origin, "mu"), origin + ".mu");
  cert.energy = require_number(require_field(root, origin, "energy"),
                               origin + ".energy");
  cert.tol = require_number(require_field(root, origin, "tol"),
                            origin + ".tol");
  cert.iterations = static_cast<long>(require_number(
      require_field(root, origin, "iterations"), origin + ".iterations"));
  cert.restarts_used = static_cast<int>(require_number(
      require_field(root, origin, "restarts_used"),
      origin + ".restarts_used"));
  cert.residual_max = require_number(
      require_field(root, origin, "residual_max"), origin + ".residual_max");

  const json& jsol = require_object(require_field(root, origin, "solution"),
                                    origin + ".solution");
  for (const auto& item : jsol.items()) {
    cert.solution.emplace_back(
        item.key(),
        require_number(item.value(), origin + ".solution." + item.key()));
  }

  const json& jchecks = require_array(require_field(root, origin, "checks"),
                                      origin + ".checks");
  for (std::size_t i = 0; i < jchecks.size(); ++i) {
    const std::string path = origin + ".checks[" + std::to_string(i) + "]";
    const json& jc = require_object(jchecks[i], path);
    reject_unknown(jc, path,
                   {"name", "status", "measured", "bound", "slack", "source"});
    Check c;
    c.name = require_string(require_field(jc, path, "name"), path + ".name");
    c.status = parse_status(
        require_string(require_field(jc, path, "status"), path + ".status"),
        path + ".status");
    c.measured = require_number(require_field(jc, path, "measured"),
                                path + ".measured");
    c.bound = require_number(require_field(jc, path, "bound"), path + ".bound");
    c.slack = require_number(require_field(jc, path, "slack"), path + ".slack");
    c.source = require_string(require_field(jc, path, "source"),
                              path + ".source");
    cert.checks.push_back(std::move(c));
  }
  return cert;
}

Certificate load_certificate_file(const std::string& path) {
  return parse_certificate_json(read_text_file(path), path);
}

}  // namespace yamabe
