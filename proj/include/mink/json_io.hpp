#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "mink/certify.hpp"

namespace mink {

using nlohmann::json;

// Rationals travel as "num/den" strings in lowest terms with positive
// denominator; float64 values as plain JSON numbers.

inline json scalar_to_json(const Rational& x) {
  return json(x.get_num().get_str() + "/" + x.get_den().get_str());
}
inline json scalar_to_json(double x) { return json(x); }
inline json scalar_to_json(const QuadExt& x) { return json(x.to_double()); }

template <class S>
S scalar_from_json(const json& j);

template <>
inline Rational scalar_from_json<Rational>(const json& j) {
  if (j.is_string()) return rat(j.get<std::string>());
  if (j.is_number_integer()) return rat(j.get<long>());
  fail(Errc::parse_error, "expected a rational (\"p/q\" string or integer)");
}

template <>
inline double scalar_from_json<double>(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return rat(j.get<std::string>()).get_d();
  fail(Errc::parse_error, "expected a float64 number");
}

template <class S>
json vec_to_json(const Vec<S>& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(scalar_to_json(v(i)));
  return arr;
}

template <class S>
Vec<S> vec_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    fail(Errc::parse_error, "expected a nonempty coordinate array");
  Vec<S> v(static_cast<Index>(j.size()));
  Index i = 0;
  for (const auto& x : j) v(i++) = scalar_from_json<S>(x);
  return v;
}

template <class S>
json mat_to_json(const Mat<S>& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <class S>
Mat<S> mat_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    fail(Errc::parse_error, "expected an array of matrix rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j[0].size());
  Mat<S> m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (static_cast<Index>(j[i].size()) != cols)
      fail(Errc::parse_error, "ragged matrix rows");
    for (Index c = 0; c < cols; ++c)
      m(i, c) = scalar_from_json<S>(j[i][c]);
  }
  return m;
}

// --- candidate map files ---------------------------------------------------------
// {"dimension": n, "scalar": "rational"|"float64",
//  "matrix": [[...], ...], "translation": [...]}

template <class S>
json affine_to_json(const AffineMap<S>& f) {
  return json{{"dimension", f.dim() - 1},
              {"scalar", ScalarName<S>::value},
              {"matrix", mat_to_json(f.A)},
              {"translation", vec_to_json(f.b)}};
}

inline std::string file_scalar_kind(const json& j) {
  if (!j.is_object()) fail(Errc::parse_error, "expected a JSON object");
  std::string s = j.value("scalar", std::string("rational"));
  if (s != "rational" && s != "float64")
    fail(Errc::parse_error, "scalar must be \"rational\" or \"float64\"");
  return s;
}

template <class S>
AffineMap<S> affine_from_json(const json& j) {
  if (!j.contains("matrix") || !j.contains("translation"))
    fail(Errc::parse_error, "map file needs \"matrix\" and \"translation\"");
  Mat<S> a = mat_from_json<S>(j["matrix"]);
  Vec<S> b = vec_from_json<S>(j["translation"]);
  if (j.contains("dimension") &&
      j["dimension"].get<long>() + 1 != a.rows())
    fail(Errc::parse_error, "declared dimension disagrees with the matrix");
  return make_affine(std::move(a), std::move(b));
}

// --- geometry ----------------------------------------------------------------------

template <class S>
json line_to_json(const Line<S>& l) {
  return json{{"base", vec_to_json(l.base)},
              {"direction", vec_to_json(l.direction)}};
}

template <class S>
Line<S> line_from_json(const json& j) {
  if (!j.contains("base") || !j.contains("direction"))
    fail(Errc::parse_error, "line needs \"base\" and \"direction\"");
  return Line<S>{vec_from_json<S>(j["base"]), vec_from_json<S>(j["direction"])};
}

template <class S>
json hyperboloid_to_json(const Hyperboloid<S>& h) {
  return json{{"center", vec_to_json(h.center)},
              {"radius", scalar_to_json(h.radius)}};
}

template <class S>
json shell_to_json(const Shell<S>& s) {
  json j{{"center", vec_to_json(s.center)},
         {"radius", scalar_to_json(s.radius)},
         {"orientation",
          s.orientation == Orientation::Forward ? "forward" : "backward"}};
  if (s.standard_exponent) j["standard_exponent"] = *s.standard_exponent;
  return j;
}

template <class S>
Shell<S> shell_from_json(const json& j) {
  std::string o = j.value("orientation", std::string("forward"));
  Shell<S> s{vec_from_json<S>(j["center"]), scalar_from_json<S>(j["radius"]),
             o == "forward" ? Orientation::Forward : Orientation::Backward,
             {}};
  if constexpr (std::is_same_v<S, Rational>)
    s.standard_exponent = dyadic_exponent(s.radius);
  return s;
}

template <class S>
json decomposition_to_json(const Decomposition<S>& d, const json& residual) {
  return json{{"tau", vec_to_json(d.tau)},
              {"lambda", mat_to_json(d.lambda)},
              {"a", scalar_to_json(d.a)},
              {"rho", mat_to_json(d.rho)},
              {"residual", residual}};
}

// --- reports -------------------------------------------------------------------------

template <class S>
json report_to_json(const Report<S>& r) {
  json j{{"suite", r.suite},
         {"verdict", to_string(r.verdict)},
         {"trials", r.trials},
         {"seed", r.seed},
         {"elapsed_ms", r.elapsed_ms}};
  if (r.witness) {
    j["witness"] = json{{"v", vec_to_json(r.witness->center)},
                        {"p", vec_to_json(r.witness->point)},
                        {"direction", r.witness->direction},
                        {"detail", r.witness->detail}};
  }
  return j;
}

// --- files ---------------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(Errc::parse_error, "invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

}  // namespace mink
