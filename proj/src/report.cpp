#include "rho/report.hpp"

namespace rho::report {

std::string digest(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

json header(const std::string& command, const std::string& model_name,
            const std::string& source_text) {
  return json{{"schema", 1},
              {"command", command},
              {"inputs", {{"model", model_name}, {"digest", digest(source_text)}}}};
}

json vec_json(const FDAlgebra& H, const linalg::Vec& v) {
  json terms = json::array();
  for (int i = 0; i < H.dim(); ++i) {
    if (v[i] == 0) continue;
    terms.push_back({{"basis", H.elem(i).name}, {"coeff", rational_str(v[i])}});
  }
  return json{{"text", H.vec_str(v)}, {"terms", terms}};
}

json derivation_json(const Derivation& D) {
  const FDAlgebra& H = *D.ambient();
  json assign = json::object();
  for (int p = 0; p < H.dim(); ++p) {
    linalg::Vec col = D.apply(H.basis_vec(p));
    if (linalg::is_zero(col)) continue;
    assign[H.elem(p).name] = vec_json(H, col);
  }
  return json{{"degree", D.degree()}, {"assignments", assign}};
}

json chain_derivation_json(const ChainDerivation& D) {
  const GcaPtr& alg = D.model().algebra();
  json assign = json::object();
  for (int i = 0; i < alg->size(); ++i) {
    if (D.assignment(i).is_zero()) continue;
    assign[alg->gen(i).name] = D.assignment(i).str();
  }
  return json{{"degree", D.degree()}, {"assignments", assign}};
}

json betti_json(const CohomologyResult& res, int max_degree) {
  json rows = json::array();
  for (int n = 0; n <= max_degree; ++n) {
    json reps = json::array();
    for (const auto& r : res.representatives(n)) reps.push_back(r.str());
    rows.push_back({{"degree", n}, {"betti", res.betti(n)}, {"representatives", reps}});
  }
  return rows;
}

json ring_json(const RingExport& ex) {
  const FDAlgebra& H = *ex.ring;
  json gens = json::array();
  for (int i = 0; i < H.dim(); ++i) {
    gens.push_back({{"name", H.elem(i).name},
                    {"degree", H.degree_of(i)},
                    {"representative", ex.reps[i].str()}});
  }
  json products = json::array();
  for (int i = 1; i < H.dim(); ++i) {
    for (int j = i; j < H.dim(); ++j) {
      const auto& v = H.mul_basis(i, j);
      if (v.empty()) continue;
      linalg::Vec w(H.dim());
      for (const auto& [k, c] : v) w[k] = c;
      products.push_back({{"left", H.elem(i).name},
                          {"right", H.elem(j).name},
                          {"value", vec_json(H, w)}});
    }
  }
  return json{{"top", ex.top}, {"generators", gens}, {"products", products}};
}

json rigidity_json(const RigidityReport& rep, const FDAlgebra& H) {
  json dims = json::array();
  for (const auto& [n, d] : rep.space_dims) dims.push_back({{"degree", n}, {"dim", d}});
  json witnesses = json::array();
  for (const auto& w : rep.witnesses) {
    witnesses.push_back({{"degree", w.derivation_degree},
                         {"derivation", derivation_json(w.derivation)},
                         {"char_element", vec_json(H, w.char_element)},
                         {"image", vec_json(H, w.image)}});
  }
  const char* verdict = rep.verdict == Verdict::Rigid ? "rigid"
                        : rep.verdict == Verdict::NotRigid ? "not_rigid"
                                                           : "indeterminate";
  return json{{"verdict", verdict},
              {"mode", rep.mode == RigidityMode::Model ? "model" : "cohomology"},
              {"torus_dim", rep.dim_torus},
              {"rank", rep.k},
              {"class_h_variant", rep.class_h_variant},
              {"dims", dims},
              {"witnesses", witnesses}};
}

json lower_grading_json(const LowerGrading& lg) {
  json rows = json::array();
  for (int n = 0; n < int(lg.dims.size()); ++n) {
    json per_k = json::array();
    for (int k = 0; k < int(lg.dims[n].size()); ++k) per_k.push_back(lg.dims[n][k]);
    rows.push_back({{"degree", n}, {"dims", per_k}});
  }
  return json{{"max_wordlength", lg.max_wordlength}, {"table", rows}};
}

json peel_json(const PeelResult& pr, const FDAlgebra& H, const TorusBasis& t) {
  (void)H;
  json steps = json::array();
  for (const auto& s : pr.steps) {
    steps.push_back({{"torus_index", s.torus_index},
                     {"torus_monomial", t.name(s.torus_index)},
                     {"derivation", derivation_json(s.coefficient)}});
  }
  return json{{"steps", steps}, {"residual_identity", pr.residual_identity}};
}

Derivation derivation_from_json(const json& j, const FDPtr& H) {
  int degree = j.at("degree").get<int>();
  linalg::Mat m(H->dim(), H->dim());
  for (const auto& [name, val] : j.at("assignments").items()) {
    int p = H->index_of(name);
    if (p < 0) throw Error("unknown basis element in serialized derivation: " + name);
    for (const auto& term : val.at("terms")) {
      int q = H->index_of(term.at("basis").get<std::string>());
      if (q < 0) throw Error("unknown basis element in serialized derivation");
      m.at(q, p) = parse_rational(term.at("coeff").get<std::string>());
    }
  }
  return Derivation::make(H, degree, std::move(m), /*validate=*/true);
}

}  // namespace rho::report
