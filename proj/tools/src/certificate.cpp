// Copyright 2026 The qsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qsep/cli/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "qsep/cli/state_file.hpp"
#include "qsep/version.hpp"

namespace qsep::cli {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Product: return "product";
    case Verdict::Separable: return "separable";
    case Verdict::Entangled: return "entangled";
  }
  return "unknown";
}

Verdict verdict_from_string(std::string_view s) {
  if (s == "product") return Verdict::Product;
  if (s == "separable") return Verdict::Separable;
  if (s == "entangled") return Verdict::Entangled;
  throw Error(ErrorCode::ParseError, "verdict: unknown value \"" + std::string(s) + "\"");
}

Verdict classify(const DensityMatrix& rho, const Tolerances& tol) {
  if (!is_ppt(rho, tol.psd).is_ppt) return Verdict::Entangled;
  const EigenSystem es = hermitian_eig(rho.matrix());
  if (numerical_rank(es, tol.rank) == 1 && is_product_vector(es.vectors[3]))
    return Verdict::Product;
  return Verdict::Separable;
}

Certificate make_certificate(const Matrix4& state, const Tolerances& tol, bool decompose) {
  const DensityMatrix rho = load_state(StateFile{{}, {}, state}, "state", tol.psd);
  Certificate c;
  c.version = kVersion;
  c.tolerances = tol;
  c.state = state;
  c.verdict = classify(rho, tol);
  c.ppt = is_ppt(rho, tol.psd);
  c.factorizable = is_product_state(rho);
  c.index_of_correlation = index_of_correlation(rho);
  if (!decompose) return c;

  if (c.verdict == Verdict::Entangled) {
    c.pseudomixture = pseudomix(rho, tol);
    c.reconstruction = (state - c.pseudomixture->assemble()).frobenius_norm();
    c.positive_part_min_pt =
        hermitian_eig(partial_transpose(c.pseudomixture->positive_part.assemble())).values[0];
  } else {
    c.local_mixture = qsep::decompose(rho, tol);
    c.reconstruction = (state - c.local_mixture->assemble()).frobenius_norm();
  }
  return c;
}

// --- JSON -------------------------------------------------------------------

namespace {

Json terms_to_json(const LocalMixture& mix) {
  Json out = Json::array();
  for (const auto& t : mix.terms) {
    Json term = Json::object();
    term["weight"] = t.weight;
    term["e"] = ket_to_json(t.state.e);
    term["f"] = ket_to_json(t.state.f);
    out.push_back(std::move(term));
  }
  return out;
}

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

const Json& need(const Json& obj, const char* key, const std::string& field) {
  if (!obj.is_object()) bad(field, "expected an object");
  if (!obj.contains(key)) bad(field, std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

bool need_bool(const Json& obj, const char* key, const std::string& field) {
  const Json& j = need(obj, key, field);
  if (!j.is_boolean()) bad(field + "." + key, "expected true or false");
  return j.get<bool>();
}

double need_number(const Json& obj, const char* key, const std::string& field) {
  return number_from_json(need(obj, key, field), field + "." + key);
}

std::string need_string(const Json& obj, const char* key, const std::string& field) {
  const Json& j = need(obj, key, field);
  if (!j.is_string()) bad(field + "." + key, "expected a string");
  return j.get<std::string>();
}

std::size_t need_count(const Json& obj, const char* key, const std::string& field) {
  const Json& j = need(obj, key, field);
  if (!j.is_number_unsigned()) bad(field + "." + key, "expected a non-negative integer");
  return j.get<std::size_t>();
}

// Rejects keys outside `allowed` so that typos do not pass silently.
void only_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
               const std::string& field) {
  if (!obj.is_object()) bad(field, "expected a JSON object");
  for (const auto& item : obj.items())
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      bad(field, "unknown field \"" + item.key() + "\"");
}

LocalMixture terms_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of terms");
  LocalMixture mix;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tf = field + "[" + std::to_string(i) + "]";
    only_keys(j[i], {"weight", "e", "f"}, tf);
    MixtureTerm t;
    t.weight = need_number(j[i], "weight", tf);
    t.state.e = ket2_from_json(need(j[i], "e", tf), tf + ".e");
    t.state.f = ket2_from_json(need(j[i], "f", tf), tf + ".f");
    mix.terms.push_back(t);
  }
  return mix;
}

}  // namespace

Json certificate_to_json(const Certificate& c) {
  Json doc = Json::object();
  doc["tool"] = c.tool;
  doc["version"] = c.version;
  doc["verdict"] = std::string(to_string(c.verdict));
  doc["tolerances"] = Json{{"rank", c.tolerances.rank},
                           {"psd", c.tolerances.psd},
                           {"recon", c.tolerances.recon}};
  Json ppt = Json::object();
  ppt["is_ppt"] = c.ppt.is_ppt;
  ppt["min_eigenvalue"] = c.ppt.min_eigenvalue;
  if (c.ppt.negative_eigenvector) ppt["negative_eigenvector"] = ket_to_json(*c.ppt.negative_eigenvector);
  doc["ppt"] = std::move(ppt);
  doc["factorizable"] = c.factorizable;
  doc["index_of_correlation"] = c.index_of_correlation;
  doc["state"] = matrix_to_json(c.state);

  if (c.local_mixture) {
    Json d = Json::object();
    d["kind"] = "local_mixture";
    d["cardinality"] = c.local_mixture->size();
    d["terms"] = terms_to_json(*c.local_mixture);
    doc["decomposition"] = std::move(d);
  } else if (c.pseudomixture) {
    const Pseudomixture& pm = *c.pseudomixture;
    Json d = Json::object();
    d["kind"] = "pseudomixture";
    d["q"] = pm.q;
    d["q_kind"] = "constructive";
    d["cardinality"] = Json{{"plus", pm.positive_part.size()},
                            {"minus", pm.negative_part.size()},
                            {"total", pm.cardinality()}};
    d["cardinality_fallback"] = pm.cardinality_fallback;
    d["positive_part"] = terms_to_json(pm.positive_part);
    d["negative_part"] = terms_to_json(pm.negative_part);
    doc["decomposition"] = std::move(d);
  }
  if (c.reconstruction) {
    Json r = Json::object();
    r["reconstruction"] = *c.reconstruction;
    if (c.positive_part_min_pt) r["positive_part_min_pt_eigenvalue"] = *c.positive_part_min_pt;
    doc["residuals"] = std::move(r);
  }
  return doc;
}

Certificate certificate_from_json(const Json& doc, const std::string& source) {
  only_keys(doc,
            {"tool", "version", "verdict", "tolerances", "ppt", "factorizable",
             "index_of_correlation", "state", "decomposition", "residuals"},
            source);
  Certificate c;
  c.tool = need_string(doc, "tool", source);
  c.version = need_string(doc, "version", source);
  c.verdict = verdict_from_string(need_string(doc, "verdict", source));
  const Json& tol = need(doc, "tolerances", source);
  only_keys(tol, {"rank", "psd", "recon"}, source + ".tolerances");
  c.tolerances.rank = need_number(tol, "rank", source + ".tolerances");
  c.tolerances.psd = need_number(tol, "psd", source + ".tolerances");
  c.tolerances.recon = need_number(tol, "recon", source + ".tolerances");
  const Json& ppt = need(doc, "ppt", source);
  only_keys(ppt, {"is_ppt", "min_eigenvalue", "negative_eigenvector"}, source + ".ppt");
  c.ppt.is_ppt = need_bool(ppt, "is_ppt", source + ".ppt");
  c.ppt.min_eigenvalue = need_number(ppt, "min_eigenvalue", source + ".ppt");
  if (ppt.contains("negative_eigenvector"))
    c.ppt.negative_eigenvector =
        ket4_from_json(ppt.at("negative_eigenvector"), source + ".ppt.negative_eigenvector");
  c.factorizable = need_bool(doc, "factorizable", source);
  c.index_of_correlation = need_number(doc, "index_of_correlation", source);
  c.state = matrix_from_json(need(doc, "state", source), source + ".state");

  if (doc.contains("decomposition")) {
    const std::string df = source + ".decomposition";
    const Json& d = doc.at("decomposition");
    const std::string kind = need_string(d, "kind", df);
    if (kind == "local_mixture") {
      only_keys(d, {"kind", "cardinality", "terms"}, df);
      c.local_mixture = terms_from_json(need(d, "terms", df), df + ".terms");
      if (need_count(d, "cardinality", df) != c.local_mixture->size())
        bad(df + ".cardinality", "does not match the number of terms");
    } else if (kind == "pseudomixture") {
      only_keys(d,
                {"kind", "q", "q_kind", "cardinality", "cardinality_fallback", "positive_part",
                 "negative_part"},
                df);
      Pseudomixture pm;
      pm.q = need_number(d, "q", df);
      pm.cardinality_fallback = need_bool(d, "cardinality_fallback", df);
      pm.positive_part = terms_from_json(need(d, "positive_part", df), df + ".positive_part");
      pm.negative_part = terms_from_json(need(d, "negative_part", df), df + ".negative_part");
      const Json& card = need(d, "cardinality", df);
      only_keys(card, {"plus", "minus", "total"}, df + ".cardinality");
      if (need_count(card, "plus", df + ".cardinality") != pm.positive_part.size() ||
          need_count(card, "minus", df + ".cardinality") != pm.negative_part.size() ||
          need_count(card, "total", df + ".cardinality") != pm.cardinality())
        bad(df + ".cardinality", "does not match the number of terms");
      c.pseudomixture = std::move(pm);
    } else {
      bad(df + ".kind", "unknown value \"" + kind + "\"");
    }
    const Json& r = need(doc, "residuals", source);
    only_keys(r, {"reconstruction", "positive_part_min_pt_eigenvalue"}, source + ".residuals");
    c.reconstruction = need_number(r, "reconstruction", source + ".residuals");
    if (c.pseudomixture)
      c.positive_part_min_pt =
          need_number(r, "positive_part_min_pt_eigenvalue", source + ".residuals");
  }
  return c;
}

// --- verification -------------------------------------------------------------

VerificationReport verify_certificate(const Matrix4& state, const Certificate& c) {
  const Tolerances& tol = c.tolerances;
  VerificationReport rep;
  rep.add("state_match", (state - c.state).frobenius_norm(), 1e-12);

  const DensityMatrix rho = load_state(StateFile{{}, {}, state}, "state", tol.psd);
  const Verdict verdict = classify(rho, tol);
  rep.add("verdict", verdict == c.verdict ? 0.0 : 1.0, 0.0);
  const PptReport ppt = is_ppt(rho, tol.psd);
  rep.add("ppt_min_eigenvalue", std::abs(ppt.min_eigenvalue - c.ppt.min_eigenvalue), 1e-9);
  rep.add("ppt_flag", ppt.is_ppt == c.ppt.is_ppt ? 0.0 : 1.0, 0.0);
  rep.add("index_of_correlation",
          std::abs(index_of_correlation(rho) - c.index_of_correlation), 1e-9);

  if (!c.local_mixture && !c.pseudomixture) return rep;

  const bool kind_ok = (c.verdict == Verdict::Entangled) == c.pseudomixture.has_value();
  rep.add("decomposition_kind", kind_ok ? 0.0 : 1.0, 0.0);

  double recon = 0.0;
  if (c.local_mixture) {
    for (auto& entry : check_local_mixture(state, *c.local_mixture, tol).checks)
      rep.checks.push_back(std::move(entry));
    if (c.verdict == Verdict::Product)
      rep.add("product_cardinality", std::abs(double(c.local_mixture->size()) - 1.0), 0.0);
    rep.add("cardinality_bound", double(c.local_mixture->size()), 4.0);
    recon = (state - c.local_mixture->assemble()).frobenius_norm();
  } else {
    const Pseudomixture& pm = *c.pseudomixture;
    for (auto& entry : verify_pseudomixture(state, pm, tol).checks)
      rep.checks.push_back(std::move(entry));
    rep.add("cardinality_bound", double(pm.cardinality()), 5.0);
    recon = (state - pm.assemble()).frobenius_norm();
    const double min_pt = hermitian_eig(partial_transpose(pm.positive_part.assemble())).values[0];
    const double stated = c.positive_part_min_pt.value_or(0.0);
    rep.add("positive_part_min_pt_reproduced", std::abs(min_pt - stated),
            2.0 * std::abs(stated) + 1e-12);
  }
  const double stated = c.reconstruction.value_or(0.0);
  rep.add("reconstruction_reproduced", recon, 2.0 * stated + 1e-14);
  return rep;
}

}  // namespace qsep::cli
