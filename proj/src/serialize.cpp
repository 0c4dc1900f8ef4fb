#include "ncwres/serialize.hpp"

#include <stdexcept>
#include <string>

namespace ncwres {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("malformed JSON: " + what); }

/// Type errors from the JSON library surface as malformed input.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    bad(e.what());
  }
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad(std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

Json scalar_to_json(const Rational& q, int pi_power) {
  return Json{{"num", to_int64(q.get_num())}, {"den", to_int64(q.get_den())}, {"pi", pi_power}};
}

Scalar scalar_from_json(const Json& j) {
  return guarded([&]() -> Scalar {
    const auto num = field(j, "num").get<long>();
    const auto den = field(j, "den").get<long>();
    const int pi = j.contains("pi") ? j.at("pi").get<int>() : 0;
    if (den == 0) bad("zero denominator");
    if (pi < 0) bad("negative pi power");
    return Scalar(make_rational(num, den), pi);
  });
}

Json letter_to_json(const Letter& l, int d) {
  Json j;
  switch (l.base) {
    case Base::H: j["base"] = "H"; break;
    case Base::Hinv: j["base"] = "Hinv"; break;
    case Base::T:
      j["base"] = "T";
      j["axis"] = l.axis;
      break;
    case Base::X: j["base"] = "X"; break;
  }
  Json deriv = Json::array();
  for (int a = 0; a < d; ++a) deriv.push_back(l.deriv[a]);
  j["deriv"] = deriv;
  return j;
}

Letter letter_from_json(const Json& j) {
  return guarded([&]() -> Letter {
    Letter l;
    const auto base = field(j, "base").get<std::string>();
    if (base == "H") {
      l.base = Base::H;
    } else if (base == "Hinv") {
      l.base = Base::Hinv;
    } else if (base == "T") {
      l.base = Base::T;
      const int axis = field(j, "axis").get<int>();
      if (axis < 1 || axis > kMaxDim) bad("torsion axis out of range");
      l.axis = static_cast<std::uint8_t>(axis);
    } else if (base == "X") {
      l.base = Base::X;
    } else {
      bad("unknown letter base '" + base + "'");
    }
    if (j.contains("deriv")) {
      const auto& deriv = j.at("deriv");
      if (!deriv.is_array() || deriv.size() > static_cast<std::size_t>(kMaxDim)) bad("deriv");
      for (std::size_t a = 0; a < deriv.size(); ++a) {
        const int v = deriv[a].get<int>();
        if (v < 0 || v > 255) bad("deriv entry");
        l.deriv[a] = static_cast<std::uint8_t>(v);
      }
    }
    if (l.base == Base::Hinv && l.order() != 0) bad("derived h^-1 letter");
    return l;
  });
}

Json word_to_json(const Word& w, int d) {
  Json j = Json::array();
  for (const auto& l : w) j.push_back(letter_to_json(l, d));
  return j;
}

Word word_from_json(const Json& j) {
  return guarded([&]() -> Word {
    if (!j.is_array()) bad("word must be an array");
    Word w;
    for (const auto& l : j) w.push_back(letter_from_json(l));
    return w;
  });
}

Json to_json(const NCPoly& p, int d) {
  Json terms = Json::array();
  for (const auto& [w, c] : p.terms()) terms.push_back(Json{{"coef", scalar_to_json(c)}, {"word", word_to_json(w, d)}});
  return Json{{"terms", terms}};
}

NCPoly ncpoly_from_json(const Json& j) {
  return guarded([&]() -> NCPoly {
    NCPoly p;
    for (const auto& t : field(j, "terms")) {
      const Scalar s = scalar_from_json(field(t, "coef"));
      if (s.pi_power != 0) bad("polynomial coefficients cannot carry pi");
      p.add_term(word_from_json(field(t, "word")), s.q);
    }
    return p;
  });
}

Json to_json(const TraceExpression& e, int d) {
  Json terms = Json::array();
  for (const auto& [k, q] : e.terms()) {
    terms.push_back(Json{{"coef", scalar_to_json(q, k.pi_power)}, {"word", word_to_json(k.word, d)}, {"trace", true}});
  }
  return Json{{"terms", terms}};
}

TraceExpression trace_expression_from_json(const Json& j) {
  return guarded([&]() -> TraceExpression {
    TraceExpression e;
    for (const auto& t : field(j, "terms")) {
      if (!t.value("trace", false)) bad("trace term without \"trace\": true");
      e.add(word_from_json(field(t, "word")), scalar_from_json(field(t, "coef")));
    }
    return e;
  });
}

Json to_json(const Symbol& s) {
  Json comps = Json::object();
  for (const auto& [k, comp] : s.components()) {
    Json list = Json::array();
    for (const auto& [xi, c] : comp) {
      Json alpha = Json::array();
      for (int a = 0; a < s.dim(); ++a) alpha.push_back(xi.alpha[a]);
      list.push_back(Json{{"coef", to_json(c, s.dim())}, {"alpha", alpha}, {"m", xi.m}});
    }
    comps[std::to_string(k)] = list;
  }
  return Json{{"components", comps}};
}

Symbol symbol_from_json(const Json& j, int d) {
  return guarded([&]() -> Symbol {
    Symbol s(d);
    const auto& comps = field(j, "components");
    if (!comps.is_object()) bad("components must be an object");
    for (const auto& [key, list] : comps.items()) {
      int degree = 0;
      try {
        degree = std::stoi(key);
      } catch (const std::exception&) {
        bad("component key '" + key + "'");
      }
      for (const auto& t : list) {
        XiMonomial xi;
        const auto& alpha = field(t, "alpha");
        if (!alpha.is_array() || alpha.size() != static_cast<std::size_t>(d)) bad("alpha length");
        for (int a = 0; a < d; ++a) {
          const int v = alpha[static_cast<std::size_t>(a)].get<int>();
          if (v < 0 || v > 255) bad("alpha entry");
          xi.alpha[a] = static_cast<std::uint8_t>(v);
        }
        xi.m = field(t, "m").get<int>();
        if (xi.degree() != degree) bad("term degree does not match component key " + key);
        s.add_term(ncpoly_from_json(field(t, "coef")), xi);
      }
    }
    return s;
  });
}

Json to_json(const OperatorSpec& spec) {
  return Json{{"d", spec.d}, {"torsion", spec.torsion}, {"include_x", spec.include_x}, {"flat", spec.flat}};
}

OperatorSpec operator_spec_from_json(const Json& j) {
  return guarded([&]() -> OperatorSpec {
    if (!j.is_object()) bad("operator spec must be an object");
    OperatorSpec spec;
    spec.d = j.value("d", 4);
    spec.torsion = j.value("torsion", true);
    spec.include_x = j.value("include_x", false);
    spec.flat = j.value("flat", false);
    spec.validate();
    return spec;
  });
}

namespace {

Json element_to_json(const FourierElement& x) {
  Json coeffs = Json::array();
  for (const auto& [idx, c] : x.coeffs()) {
    Json index = Json::array();
    for (int a = 0; a < x.dim(); ++a) index.push_back(idx[a]);
    coeffs.push_back(Json{{"index", index}, {"re", c.real()}, {"im", c.imag()}});
  }
  return Json{{"coeffs", coeffs}};
}

FourierElement element_from_json(const Json& j, const ThetaMatrix& theta) {
  FourierElement x(theta);
  for (const auto& c : field(j, "coeffs")) {
    const auto& index = field(c, "index");
    if (!index.is_array() || index.size() != static_cast<std::size_t>(theta.dim())) bad("index length");
    FourierIndex idx{};
    for (int a = 0; a < theta.dim(); ++a) idx[a] = index[static_cast<std::size_t>(a)].get<int>();
    x.add(idx, Complex(field(c, "re").get<double>(), c.value("im", 0.0)));
  }
  return x;
}

}  // namespace

Json to_json(const Assignment& a) {
  Json theta = Json::array();
  for (int j = 0; j < a.theta.dim(); ++j) {
    Json row = Json::array();
    for (int k = 0; k < a.theta.dim(); ++k) row.push_back(a.theta(j, k));
    theta.push_back(row);
  }
  Json atoms = Json::object();
  for (const auto& [name, x] : a.atoms) atoms[name] = element_to_json(x);
  return Json{{"theta", theta}, {"atoms", atoms}, {"tol", a.tol}};
}

Assignment assignment_from_json(const Json& j) {
  return guarded([&]() -> Assignment {
    const auto& rows = field(j, "theta");
    if (!rows.is_array() || rows.empty()) bad("theta must be a non-empty matrix");
    const int d = static_cast<int>(rows.size());
    std::vector<double> entries;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != rows.size()) bad("theta must be square");
      for (const auto& v : row) entries.push_back(v.get<double>());
    }
    const ThetaMatrix theta(d, std::move(entries));
    std::map<std::string, FourierElement> atoms;
    for (const auto& [name, el] : field(j, "atoms").items()) atoms.emplace(name, element_from_json(el, theta));
    return make_assignment(theta, std::move(atoms), j.value("tol", 1e-10));
  });
}

}  // namespace ncwres
