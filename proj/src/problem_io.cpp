#include "entlp/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace entlp {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidInput(std::string("problem file: missing field \"") + key + "\"");
  return doc.at(key);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InvalidInput("problem file: " + where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidInput("problem file: " + where + " must be finite");
  return x;
}

std::int64_t integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) return static_cast<std::int64_t>(x);
  }
  throw InvalidInput("problem file: " + where + " must be an integer");
}

const json& array(const json& v, const std::string& where) {
  if (!v.is_array()) throw InvalidInput("problem file: " + where + " must be an array");
  return v;
}

Vector real_vector(const json& v, const std::string& where) {
  array(v, where);
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k)
    out(static_cast<Eigen::Index>(k)) = number(v[k], where + "[" + std::to_string(k) + "]");
  return out;
}

std::vector<int> int_vector(const json& v, const std::string& where) {
  array(v, where);
  std::vector<int> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(static_cast<int>(integer(v[k], where + "[" + std::to_string(k) + "]")));
  return out;
}

StandardFormLP parse_lp(const json& doc) {
  StandardFormLP lp;
  const auto& A = array(field(doc, "A"), "A");
  const std::size_t d = A.size();
  const std::size_t n = d ? array(A[0], "A[0]").size() : 0;
  lp.A.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < d; ++r) {
    const auto& row = array(A[r], "A[" + std::to_string(r) + "]");
    if (row.size() != n) throw InvalidInput("problem file: A is ragged");
    for (std::size_t j = 0; j < n; ++j)
      lp.A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
          integer(row[j], "A[" + std::to_string(r) + "][" + std::to_string(j) + "]");
  }
  lp.b = real_vector(field(doc, "b"), "b");
  lp.c = real_vector(field(doc, "c"), "c");
  if (doc.contains("labels")) {
    for (const auto& l : array(doc.at("labels"), "labels")) {
      if (!l.is_string()) throw InvalidInput("problem file: labels must be strings");
      lp.labels.push_back(l.get<std::string>());
    }
    if (lp.labels.size() != n) throw InvalidInput("problem file: need one label per column");
  }
  require_valid(lp);
  return lp;
}

TransportProblem parse_transport(const json& doc) {
  TransportProblem tp;
  tp.mu = real_vector(field(doc, "mu"), "mu");
  tp.nu = real_vector(field(doc, "nu"), "nu");
  const auto& C = array(field(doc, "cost"), "cost");
  if (C.size() != tp.d1()) throw InvalidInput("problem file: cost must have one row per entry of mu");
  tp.cost.resize(tp.mu.size(), tp.nu.size());
  for (std::size_t k = 0; k < C.size(); ++k) {
    const auto row = real_vector(C[k], "cost[" + std::to_string(k) + "]");
    if (static_cast<std::size_t>(row.size()) != tp.d2())
      throw InvalidInput("problem file: cost must have one column per entry of nu");
    tp.cost.row(static_cast<Eigen::Index>(k)) = row.transpose();
  }
  check_transport(tp);
  return tp;
}

ConicProblem parse_conic(const json& doc) {
  const int d1 = static_cast<int>(integer(field(doc, "d1"), "d1"));
  const int e1 = static_cast<int>(integer(field(doc, "e1"), "e1"));
  const int d2 = static_cast<int>(integer(field(doc, "d2"), "d2"));
  const int e2 = static_cast<int>(integer(field(doc, "e2"), "e2"));
  if (d1 < 2 || e1 < 2 || d2 < 2 || e2 < 2) throw InvalidInput("problem file: d1, e1, d2, e2 must be >= 2");
  auto mu = int_vector(field(doc, "mu"), "mu");
  auto nu = int_vector(field(doc, "nu"), "nu");
  const bool normalized = doc.contains("normalized") ? doc.at("normalized").get<bool>() : false;

  std::vector<double> cost;
  if (doc.contains("cost")) {
    // cost[kappa][i][lambda][j], flattened in the same order as the columns.
    const auto& C = array(doc.at("cost"), "cost");
    auto expect = [](const json& v, std::size_t n, const std::string& where) -> const json& {
      if (!v.is_array() || v.size() != n) throw InvalidInput("problem file: " + where + " must have length " + std::to_string(n));
      return v;
    };
    expect(C, static_cast<std::size_t>(d1), "cost");
    for (int k = 0; k < d1; ++k) {
      const auto& Ck = expect(C[static_cast<std::size_t>(k)], static_cast<std::size_t>(e1), "cost[k]");
      for (int i = 0; i < e1; ++i) {
        const auto& Cki = expect(Ck[static_cast<std::size_t>(i)], static_cast<std::size_t>(d2), "cost[k][i]");
        for (int l = 0; l < d2; ++l) {
          const auto& Ckil = expect(Cki[static_cast<std::size_t>(l)], static_cast<std::size_t>(e2), "cost[k][i][l]");
          for (int j = 0; j < e2; ++j) cost.push_back(number(Ckil[static_cast<std::size_t>(j)], "cost entry"));
        }
      }
    }
  }
  return ConicProblem(d1, e1, d2, e2, std::move(mu), std::move(nu), std::move(cost), normalized);
}

}  // namespace

StandardFormLP ProblemFile::lp() const {
  return std::visit(
      [](const auto& p) -> StandardFormLP {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StandardFormLP>)
          return p;
        else if constexpr (std::is_same_v<T, TransportProblem>)
          return build_transport(p);
        else
          return build_conic(p);
      },
      problem);
}

ProblemFile parse_problem(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("problem file: top level must be an object");
  const auto& type = field(doc, "type");
  if (!type.is_string()) throw InvalidInput("problem file: \"type\" must be a string");
  const auto t = type.get<std::string>();
  try {
    if (t == "lp") return {parse_lp(doc)};
    if (t == "transport") return {parse_transport(doc)};
    if (t == "conic") return {parse_conic(doc)};
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("problem file: ") + e.what());
  }
  throw InvalidInput("problem file: unknown type \"" + t + "\"");
}

ProblemFile parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("problem file: ") + e.what());
  }
  return parse_problem(doc);
}

ProblemFile read_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str());
}

json lp_to_json(const StandardFormLP& lp) {
  json A = json::array();
  for (Eigen::Index r = 0; r < lp.A.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index j = 0; j < lp.A.cols(); ++j) row.push_back(lp.A(r, j));
    A.push_back(std::move(row));
  }
  json doc;
  doc["type"] = "lp";
  doc["A"] = std::move(A);
  doc["b"] = std::vector<double>(lp.b.data(), lp.b.data() + lp.b.size());
  doc["c"] = std::vector<double>(lp.c.data(), lp.c.data() + lp.c.size());
  if (!lp.labels.empty()) doc["labels"] = lp.labels;
  return doc;
}

std::string canonical_dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace entlp
