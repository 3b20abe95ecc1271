#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcliff/covariants.hpp"
#include "qcliff/errors.hpp"
#include "qcliff/quantum.hpp"

namespace qcliff {

using Json = nlohmann::ordered_json;

namespace io_detail {

inline Json parse_text(const std::string& text, const std::string& origin) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON in " + origin);
  return j;
}

template <class R>
R parse_real(const Json& j, const std::string& what) {
  if (j.is_number()) {
    double v = j.get<double>();
    if (!std::isfinite(v)) throw InputError("non-finite value in " + what);
    return scalar_traits<ComplexOver<R>>::real_from_double(v);
  }
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if constexpr (std::is_same_v<R, double>) {
      std::size_t slash = s.find('/');
      try {
        if (slash == std::string::npos) return std::stod(s);
        return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
      } catch (const std::exception&) {
        throw InputError("unreadable number \"" + s + "\" in " + what);
      }
    } else {
      try {
        if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
            s.find('E') != std::string::npos) {
          double v = std::stod(s);
          if (!std::isfinite(v)) throw InputError("non-finite value in " + what);
          return R(v);
        }
        R q(s);
        q.canonicalize();
        return q;
      } catch (const InputError&) {
        throw;
      } catch (const std::exception&) {
        throw InputError("unreadable number \"" + s + "\" in " + what);
      }
    }
  }
  throw InputError("expected a number in " + what);
}

template <class S>
S parse_complex(const Json& j, const std::string& what) {
  using R = typename scalar_traits<S>::real_type;
  if (j.is_array()) {
    if (j.size() != 2) throw InputError("complex entries need [re, im] in " + what);
    R re = parse_real<R>(j[0], what);
    R im = parse_real<R>(j[1], what);
    return S{re, im};
  }
  return S{parse_real<R>(j, what), R(0)};
}

template <class R>
double to_double(const R& v) {
  if constexpr (std::is_same_v<R, double>)
    return v;
  else
    return v.get_d();
}

}  // namespace io_detail

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return io_detail::parse_text(buffer.str(), path);
}

// One spinor: {"components": [[re, im], [re, im], [re, im], [re, im]]}.
template <class S>
Column<S> parse_spinor(const Json& j) {
  if (!j.is_object() || !j.contains("components"))
    throw InputError("spinor object needs a \"components\" array");
  const Json& comps = j["components"];
  if (!comps.is_array() || comps.size() != 4)
    throw InputError("\"components\" must hold exactly 4 entries");
  Column<S> c;
  for (int i = 0; i < 4; ++i)
    c[i] = io_detail::parse_complex<S>(comps[i], "component " + std::to_string(i));
  return c;
}

// A spinor file carries either one spinor object or an array of them;
// order is preserved.
template <class S>
std::vector<Column<S>> parse_spinor_file(const Json& j) {
  std::vector<Column<S>> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(parse_spinor<S>(item));
  } else {
    out.push_back(parse_spinor<S>(j));
  }
  if (out.empty()) throw InputError("no spinors in input");
  return out;
}

// Deformation matrix: a bare 4x4 array or {"matrix": [[...], ...]}; it must
// be antisymmetric within a scale-aware tolerance.
template <class R>
BilinearForm<R> parse_a_matrix(const Json& j, double tol = 1e-12) {
  const Json* rows = &j;
  if (j.is_object()) {
    if (!j.contains("matrix")) throw InputError("deformation object needs a \"matrix\" key");
    rows = &j["matrix"];
  }
  if (!rows->is_array() || rows->size() != 4)
    throw InputError("deformation matrix must have 4 rows");
  BilinearForm<R> a;
  for (int i = 0; i < 4; ++i) {
    const Json& row = (*rows)[i];
    if (!row.is_array() || row.size() != 4)
      throw InputError("deformation matrix row " + std::to_string(i) + " must have 4 entries");
    for (int k = 0; k < 4; ++k)
      a.at(i, k) = io_detail::parse_real<R>(row[k], "deformation entry");
  }
  if (!a.is_antisymmetric(tol))
    throw InputError(
        "deformation matrix is not antisymmetric within tolerance; "
        "entries must satisfy A[i][j] = -A[j][i]");
  return a;
}

template <class R>
Json covariants_to_json(const RealCovariants<R>& cov) {
  Json j;
  j["sigma"] = io_detail::to_double(cov.sigma);
  j["J"] = Json::array();
  for (int i = 0; i < 4; ++i) j["J"].push_back(io_detail::to_double(cov.j[i]));
  Json s = Json::object();
  static const char* kPairNames[6] = {"01", "02", "03", "12", "13", "23"};
  for (int i = 0; i < 6; ++i) s[kPairNames[i]] = io_detail::to_double(cov.s[i]);
  j["S"] = s;
  j["K"] = Json::array();
  for (int i = 0; i < 4; ++i) j["K"].push_back(io_detail::to_double(cov.k[i]));
  j["omega"] = io_detail::to_double(cov.omega);
  return j;
}

// Classification record with the channel values, the label (null when the
// zero pattern matches no class) and the quadratic-identity residuals.
template <class R>
Json classification_record(const RealCovariants<R>& cov, const FierzResiduals<R>& fierz,
                           std::optional<int> label) {
  Json j = covariants_to_json(cov);
  if (label)
    j["class"] = *label;
  else
    j["class"] = nullptr;
  Json fr;
  fr["r1"] = io_detail::to_double(fierz.r1);
  fr["r2"] = io_detail::to_double(fierz.r2);
  fr["r3"] = io_detail::to_double(fierz.r3);
  fr["r4"] = fierz.r4.norm_inf_approx();
  j["fierz_residuals"] = fr;
  return j;
}

inline Json duality_record_to_json(const DualityRecord& rec) {
  Json j;
  j["classical_class"] = rec.classical_class;
  j["b_class"] = rec.b_class;
  j["admissible"] = rec.admissible;
  j["degenerate"] = rec.degenerate;
  j["marginal"] = rec.marginal;
  j["conditions"] = rec.conditions;
  return j;
}

// Deformed classification record: both labels, the three covariant sets,
// the hermiticity leaks and the duality verdict.
template <class R>
Json b_classification_record(const QuantumCovariants<R>& qc, std::optional<int> label,
                             std::optional<int> b_label, const DualityRecord& rec) {
  Json j;
  if (label)
    j["class"] = *label;
  else
    j["class"] = nullptr;
  if (b_label)
    j["b_class"] = *b_label;
  else
    j["b_class"] = nullptr;
  j["covariants"] = covariants_to_json(qc.classical);
  j["covariants_B"] = covariants_to_json(qc.b);
  j["a_part"] = covariants_to_json(qc.a_part);

  Json leaks;
  leaks["sigma_im"] = io_detail::to_double(qc.sigma_im);
  Json jim = Json::array();
  for (int i = 0; i < 4; ++i) jim.push_back(io_detail::to_double(qc.j_im[i]));
  leaks["J_im"] = jim;
  Json sre = Json::object();
  static const char* kPairNames[6] = {"01", "02", "03", "12", "13", "23"};
  for (int i = 0; i < 6; ++i) sre[kPairNames[i]] = io_detail::to_double(qc.s_re[i]);
  leaks["S_re"] = sre;
  leaks["omega_im"] = io_detail::to_double(qc.omega_im);
  leaks["k_scalar"] = io_detail::to_double(qc.k_scalar);
  j["leaks"] = leaks;

  j["duality"] = duality_record_to_json(rec);
  return j;
}

// CSV table of the scan: the (classical x deformed) count matrix followed
// by summary lines. The trailing "violations,N" line is the headline
// number of the whole scan.
inline std::string scan_to_csv(const ScanResult& r) {
  std::ostringstream out;
  out << "class,1_B,2_B,3_B,4_B,5_B,6_B\n";
  for (int c = 1; c <= 6; ++c) {
    out << c;
    for (int b = 1; b <= 6; ++b) {
      auto it = r.counts.find({c, b});
      out << ',' << (it == r.counts.end() ? 0 : it->second);
    }
    out << '\n';
  }
  out << "total," << r.total << '\n';
  out << "marginal," << r.marginal << '\n';
  out << "unclassifiable," << r.unclassifiable << '\n';
  out << "violations," << r.violations.size() << '\n';
  for (const auto& v : r.violations) {
    out << "violation," << v.index << ',' << v.classical_class << ',' << v.b_class;
    for (const auto& cond : v.conditions) out << ',' << cond;
    out << '\n';
  }
  return out.str();
}

inline Json scan_to_json(const ScanResult& r) {
  Json j;
  j["total"] = r.total;
  j["marginal"] = r.marginal;
  j["unclassifiable"] = r.unclassifiable;
  Json counts = Json::array();
  for (const auto& [pair, count] : r.counts) {
    Json row;
    row["classical_class"] = pair.first;
    row["b_class"] = pair.second;
    row["count"] = count;
    counts.push_back(row);
  }
  j["counts"] = counts;
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json row;
    row["index"] = v.index;
    row["classical_class"] = v.classical_class;
    row["b_class"] = v.b_class;
    row["conditions"] = v.conditions;
    violations.push_back(row);
  }
  j["violations"] = violations;
  return j;
}

}  // namespace qcliff
