#include "rho/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rho/catalog.hpp"
#include "rho/report.hpp"

namespace rho::cli {

namespace {

using report::json;

struct Resolved {
  ModelFile model;
  std::string source;
  std::string name;
};

Resolved resolve_model(const std::string& arg) {
  try {
    std::string src = catalog_source(arg);
    return {parse_model(src), src, arg};
  } catch (const UnknownCatalogEntry&) {
    if (!std::filesystem::exists(arg)) throw;
  }
  std::ifstream in(arg);
  if (!in) throw Error("cannot read model file: " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string src = ss.str();
  return {parse_model(src), src, arg};
}

// The DGA behind a model entry (the Cartan model for biquotients).
DGA model_dga(const ModelFile& m) {
  if (m.kind == ModelFile::Kind::Dga) return *m.dga;
  if (m.kind == ModelFile::Kind::Biquotient) return cartan_model(*m.biquotient);
  throw Error("this command needs a differential model, not an fd algebra");
}

int model_top(const ModelFile& m) {
  if (m.top) return *m.top;
  if (m.kind == ModelFile::Kind::Biquotient) return m.biquotient->formal_dimension();
  if (m.kind == ModelFile::Kind::Fd) return (*m.fd)->top_degree();
  throw Error("model declares no 'top'; a formal dimension is required here");
}

struct RingBundle {
  FDPtr ring;
  std::vector<Element> reps;  // empty for fd models
  std::optional<DGA> dga;
  std::optional<CohomologyResult> res;
  std::optional<RingExport> ex;
};

RingBundle ring_bundle(const ModelFile& m) {
  RingBundle rb;
  if (m.kind == ModelFile::Kind::Fd) {
    rb.ring = *m.fd;
    return rb;
  }
  rb.dga = model_dga(m);
  int top = model_top(m);
  rb.res = cohomology(*rb.dga, top + 1);
  rb.ex = cohomology_algebra(*rb.dga, *rb.res, top);
  rb.ring = rb.ex->ring;
  rb.reps = rb.ex->reps;
  return rb;
}

void emit(std::ostream& out, bool as_json, const json& j, const std::string& text) {
  if (as_json) out << j.dump(2) << "\n";
  else out << text;
}

int cmd_cohomology(const Resolved& r, int max_degree, bool as_json, std::ostream& out) {
  DGA M = model_dga(r.model);
  CohomologyResult res = cohomology(M, max_degree);
  json j = report::header("cohomology", r.name, r.source);
  j["betti"] = report::betti_json(res, max_degree);
  std::ostringstream os;
  os << "cohomology of " << r.name << " up to degree " << max_degree << "\n";
  os << "deg  betti  representatives\n";
  for (int n = 0; n <= max_degree; ++n) {
    os << n << "    " << res.betti(n) << "     ";
    bool first = true;
    for (const auto& rep : res.representatives(n)) {
      if (!first) os << ", ";
      os << "[" << rep.str() << "]";
      first = false;
    }
    os << "\n";
  }
  emit(out, as_json, j, os.str());
  return 0;
}

int cmd_ring(const Resolved& r, std::optional<int> top_flag, bool as_json, std::ostream& out) {
  ModelFile m = r.model;
  if (top_flag) m.top = top_flag;
  RingBundle rb = ring_bundle(m);
  json j = report::header("ring", r.name, r.source);
  std::ostringstream os;
  if (rb.ex) {
    j["ring"] = report::ring_json(*rb.ex);
  } else {
    RingExport ex;
    ex.ring = rb.ring;
    ex.top = rb.ring->top_degree();
    for (int i = 0; i < rb.ring->dim(); ++i) ex.reps.push_back(Element::zero(nullptr));
    // fd entries have no representatives; serialize names and products only
    json gens = json::array();
    for (int i = 0; i < rb.ring->dim(); ++i)
      gens.push_back({{"name", rb.ring->elem(i).name}, {"degree", rb.ring->degree_of(i)}});
    j["ring"] = {{"top", ex.top}, {"generators", gens}};
  }
  const FDAlgebra& H = *rb.ring;
  os << "cohomology ring of " << r.name << " (dim " << H.dim() << ")\n";
  for (int i = 0; i < H.dim(); ++i) {
    os << "  " << H.elem(i).name << " : degree " << H.degree_of(i);
    if (!rb.reps.empty()) os << "   [" << rb.reps[i].str() << "]";
    os << "\n";
  }
  os << "nonzero products:\n";
  for (int i = 1; i < H.dim(); ++i) {
    for (int jx = i; jx < H.dim(); ++jx) {
      const auto& v = H.mul_basis(i, jx);
      if (v.empty()) continue;
      linalg::Vec w(H.dim());
      for (const auto& [k, c] : v) w[k] = c;
      os << "  " << H.elem(i).name << " * " << H.elem(jx).name << " = " << H.vec_str(w) << "\n";
    }
  }
  emit(out, as_json, j, os.str());
  return 0;
}

int cmd_derivations(const Resolved& r, std::optional<int> degree, bool all_negative,
                    bool as_json, std::ostream& out) {
  RingBundle rb = ring_bundle(r.model);
  std::vector<int> degrees;
  if (all_negative) {
    for (int n = -rb.ring->top_degree(); n <= -1; ++n) degrees.push_back(n);
  } else if (degree) {
    degrees.push_back(*degree);
  } else {
    throw Error("pass --degree n or --all-negative");
  }
  json j = report::header("derivations", r.name, r.source);
  json spaces = json::array();
  std::ostringstream os;
  os << "derivation spaces of the ring of " << r.name << "\n";
  for (int n : degrees) {
    auto basis = derivation_space(rb.ring, n);
    json basis_json = json::array();
    for (const auto& D : basis) basis_json.push_back(report::derivation_json(D));
    spaces.push_back({{"degree", n}, {"dim", basis.size()}, {"basis", basis_json}});
    os << "degree " << n << ": dim " << basis.size() << "\n";
    for (const auto& D : basis) {
      const FDAlgebra& H = *rb.ring;
      for (int p = 0; p < H.dim(); ++p) {
        auto col = D.apply(H.basis_vec(p));
        if (!linalg::is_zero(col))
          os << "    " << H.elem(p).name << " -> " << H.vec_str(col) << "\n";
      }
      os << "    --\n";
    }
  }
  j["spaces"] = spaces;
  emit(out, as_json, j, os.str());
  return 0;
}

int cmd_chain_derivations(const Resolved& r, int degree, bool induced, bool as_json,
                          std::ostream& out) {
  DGA M = model_dga(r.model);
  auto basis = chain_derivation_space(M, degree);
  json j = report::header("chain-derivations", r.name, r.source);
  json basis_json = json::array();
  for (const auto& D : basis) basis_json.push_back(report::chain_derivation_json(D));
  j["degree"] = degree;
  j["dim"] = basis.size();
  j["basis"] = basis_json;
  std::ostringstream os;
  os << "chain derivations of " << r.name << " in degree " << degree << ": dim "
     << basis.size() << "\n";
  for (const auto& D : basis) {
    for (int i = 0; i < M.algebra()->size(); ++i) {
      if (D.assignment(i).is_zero()) continue;
      os << "    " << M.algebra()->gen(i).name << " -> " << D.assignment(i).str() << "\n";
    }
    os << "    --\n";
  }
  if (induced) {
    RingBundle rb = ring_bundle(r.model);
    json ind = json::array();
    os << "induced on cohomology:\n";
    for (const auto& D : basis) {
      Derivation Di = induced_on_cohomology(D, *rb.res, *rb.ex);
      ind.push_back(report::derivation_json(Di));
      os << "    " << (Di.is_zero() ? "0" : "nonzero") << "\n";
    }
    j["induced"] = ind;
  }
  emit(out, as_json, j, os.str());
  return 0;
}

int cmd_rigidity(const Resolved& r, int torus_dim, int rank, const std::string& mode_name,
                 bool class_h, bool as_json, std::ostream& out) {
  RigidityMode mode = mode_name == "model" ? RigidityMode::Model : RigidityMode::Cohomology;
  RingBundle rb = ring_bundle(r.model);
  std::optional<RigidityEngine> engine;
  if (mode == RigidityMode::Model) {
    if (!rb.dga) throw Error("mode=model requires a differential model, not an fd algebra");
    engine.emplace(rb.ring, *rb.dga);
  } else {
    engine.emplace(rb.ring);
  }
  RigidityReport rep = class_h ? engine->class_h_report(mode)
                               : engine->report(torus_dim, rank, mode);
  json j = report::header("rigidity", r.name, r.source);
  j["rigidity"] = report::rigidity_json(rep, *rb.ring);
  std::ostringstream os;
  os << "rigidity of " << r.name;
  if (class_h) os << " (class-H check)";
  else os << " (torus dim " << torus_dim << ", rank " << rank << ")";
  os << ", mode " << mode_name << ": "
     << (rep.verdict == Verdict::Rigid ? "rigid" : "not_rigid") << "\n";
  for (const auto& [n, d] : rep.space_dims)
    os << "  degree " << n << ": checked space dim " << d << "\n";
  for (const auto& w : rep.witnesses) {
    os << "  witness (degree " << w.derivation_degree
       << "): D(" << rb.ring->vec_str(w.char_element) << ") = "
       << rb.ring->vec_str(w.image) << "\n";
  }
  emit(out, as_json, j, os.str());
  return 0;
}

int cmd_cartan(const Resolved& r, bool as_json, std::ostream& out) {
  if (r.model.kind != ModelFile::Kind::Biquotient)
    throw Error("cartan requires a biquotient entry");
  DGA M = cartan_model(*r.model.biquotient);
  ModelFile as_model;
  as_model.kind = ModelFile::Kind::Dga;
  as_model.name = r.model.name + "_cartan";
  as_model.top = r.model.biquotient->formal_dimension();
  as_model.dga = M;
  json j = report::header("cartan", r.name, r.source);
  j["model"] = print_model(as_model);
  j["pure"] = M.is_pure();
  emit(out, as_json, j, print_model(as_model));
  return 0;
}

int cmd_lower_grading(const Resolved& r, std::optional<int> max_degree, bool as_json,
                      std::ostream& out) {
  if (r.model.kind != ModelFile::Kind::Biquotient)
    throw Error("lower-grading requires a biquotient entry");
  const BiquotientData& data = *r.model.biquotient;
  int N = max_degree ? *max_degree : data.formal_dimension();
  DGA M = cartan_model(data);
  CohomologyResult res = cohomology(M, N);
  LowerGrading lg = lower_grading(data, res);
  json j = report::header("lower-grading", r.name, r.source);
  j["lower_grading"] = report::lower_grading_json(lg);
  std::ostringstream os;
  os << "lower grading of " << r.name << " (rows: degree, columns: wordlength)\n";
  for (int n = 0; n < int(lg.dims.size()); ++n) {
    os << "  " << n << ":";
    for (int k = 0; k < int(lg.dims[n].size()); ++k) os << " " << lg.dims[n][k];
    os << "\n";
  }
  emit(out, as_json, j, os.str());
  return 0;
}

linalg::Vec resolve_tensor_poly(const PolyAst& poly, const TensorAlgebra& ring,
                                const TorusBasis& t) {
  const FDAlgebra& H = *ring.left;
  linalg::Vec out(ring.ring->dim());
  for (const auto& term : poly) {
    linalg::Vec acc = ring.pure(H.unit(), ring.right->unit(), term.coeff);
    for (const auto& [name, e] : term.factors) {
      linalg::Vec factor;
      int base_idx = H.index_of(name);
      if (base_idx >= 0) {
        factor = ring.embed_left(H.basis_vec(base_idx));
      } else {
        int torus_idx = -1;
        for (int i = 1; i < t.count(); ++i)
          if (t.degree(i) == 1 && t.name(i) == name) torus_idx = i;
        if (torus_idx < 0) throw UnknownSymbol(term.line, term.col, name);
        factor = ring.pure(H.unit(), torus_idx);
      }
      for (int k = 0; k < e; ++k) acc = ring.ring->mul(acc, factor);
    }
    for (int i = 0; i < ring.ring->dim(); ++i) out[i] += acc[i];
  }
  return out;
}

int cmd_peel(const Resolved& r, int torus_dim, const std::string& file,
             std::optional<int> rank, bool normalize, bool as_json, std::ostream& out) {
  RingBundle rb = ring_bundle(r.model);
  TorusBasis t = torus_basis(torus_dim);
  TensorAlgebra ring = tensor(rb.ring, torus_ring(t));
  std::ifstream in(file);
  if (!in) throw Error("cannot read automorphism file: " + file);
  linalg::Mat values(ring.ring->dim(), rb.ring->dim());
  for (int p = 0; p < rb.ring->dim(); ++p)
    values.at(ring.index[p][ring.right->unit()], p) = 1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char c : line)
      if (!isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw SyntaxError(lineno, 1, "CLASS = POLY");
    std::string lhs = line.substr(0, eq);
    std::string rhs = line.substr(eq + 1);
    // trim lhs
    auto b = lhs.find_first_not_of(" \t");
    auto e = lhs.find_last_not_of(" \t");
    if (b == std::string::npos) throw SyntaxError(lineno, 1, "a class name");
    lhs = lhs.substr(b, e - b + 1);
    int p = rb.ring->index_of(lhs);
    if (p < 0) throw UnknownSymbol(lineno, 1, lhs);
    linalg::Vec v = resolve_tensor_poly(parse_poly(rhs), ring, t);
    for (int i = 0; i < ring.ring->dim(); ++i) values.at(i, p) = v[i];
  }
  ProductAutomorphism h(ring, t, std::move(values), ProductAutomorphism::Check::Shape);
  PeelResult pr = peel(h, normalize);
  json j = report::header("peel", r.name, r.source);
  j["peel"] = report::peel_json(pr, *rb.ring, t);
  std::ostringstream os;
  os << "peel over " << r.name << " with torus dim " << torus_dim << "\n";
  for (const auto& s : pr.steps) {
    os << "  at " << t.name(s.torus_index) << ": "
       << (s.coefficient.is_zero() ? "0" : "nonzero derivation") << " of degree "
       << s.coefficient.degree() << "\n";
  }
  os << "residual is identity: " << (pr.residual_identity ? "yes" : "no") << "\n";
  if (rank) {
    bool cf = char_fixed(h, *rank);
    j["char_fixed"] = cf;
    os << "Char(H," << *rank << ") (x) 1 preserved: " << (cf ? "yes" : "no") << "\n";
  }
  emit(out, as_json, j, os.str());
  return 0;
}

int cmd_morphism_check(const Resolved& src, const Resolved& dst,
                       const std::vector<std::string>& assigns, bool as_json,
                       std::ostream& out) {
  DGA S = model_dga(src.model);
  DGA T = model_dga(dst.model);
  std::vector<Element> images;
  std::map<std::string, std::string> given;
  for (const auto& a : assigns) {
    auto eq = a.find('=');
    if (eq == std::string::npos) throw Error("--assign expects gen=POLY, got: " + a);
    given[a.substr(0, eq)] = a.substr(eq + 1);
  }
  for (int i = 0; i < S.algebra()->size(); ++i) {
    const std::string& name = S.algebra()->gen(i).name;
    auto it = given.find(name);
    if (it != given.end()) {
      images.push_back(resolve_poly(parse_poly(it->second), T.algebra()));
    } else {
      int j = T.algebra()->index_of(name);
      if (j < 0)
        throw Error("no assignment for generator " + name +
                    " and no target generator of that name");
      images.push_back(Element::gen(T.algebra(), j));
    }
  }
  AlgebraMorphism phi(S.algebra(), T.algebra(), std::move(images));
  bool ok = check_dga_morphism(S, T, phi);
  json j = report::header("morphism-check", src.name + "->" + dst.name,
                          src.source + dst.source);
  j["commutes"] = ok;
  emit(out, as_json, j,
       std::string("phi . d = d . phi on all generators: ") + (ok ? "true" : "false") + "\n");
  return 0;
}

int cmd_catalog(const std::string& action, const std::string& name, bool as_json,
                std::ostream& out) {
  if (action == "list") {
    json j{{"schema", 1}, {"command", "catalog"}, {"entries", catalog_names()}};
    std::ostringstream os;
    for (const auto& n : catalog_names()) os << n << "\n";
    emit(out, as_json, j, os.str());
    return 0;
  }
  if (action == "show") {
    std::string srctext = catalog_source(name);
    json j{{"schema", 1}, {"command", "catalog"}, {"entry", name}, {"source", srctext}};
    emit(out, as_json, j, srctext);
    return 0;
  }
  throw Error("catalog action must be 'list' or 'show'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rho: exact splitting-rigidity computations for Sullivan models"};
  app.require_subcommand(1);

  bool as_json = false;
  app.add_flag("--json", as_json, "emit a JSON report");

  std::string model_arg, model_arg2, mode_name = "cohomology", peel_file, catalog_action,
              catalog_name;
  int max_degree = 0, degree = 0, torus_dim = 1, rank = 2;
  std::optional<int> top_flag, lg_max_degree, peel_rank;
  bool all_negative = false, induced = false, class_h = false, normalize = false;
  std::vector<std::string> assigns;

  auto* c_coh = app.add_subcommand("cohomology", "Betti numbers and representatives");
  c_coh->add_option("model", model_arg)->required();
  c_coh->add_option("--max-degree", max_degree)->required();
  c_coh->add_flag("--json", as_json);

  auto* c_ring = app.add_subcommand("ring", "export the cohomology ring");
  c_ring->add_option("model", model_arg)->required();
  int top_value = -1;
  c_ring->add_option("--top", top_value);
  c_ring->add_flag("--json", as_json);

  auto* c_der = app.add_subcommand("derivations", "derivation spaces of the ring");
  c_der->add_option("model", model_arg)->required();
  auto* dopt = c_der->add_option("--degree", degree);
  c_der->add_flag("--all-negative", all_negative);
  c_der->add_flag("--json", as_json);

  auto* c_chain = app.add_subcommand("chain-derivations", "chain derivations of the model");
  c_chain->add_option("model", model_arg)->required();
  c_chain->add_option("--degree", degree)->required();
  c_chain->add_flag("--induced", induced);
  c_chain->add_flag("--json", as_json);

  auto* c_rig = app.add_subcommand("rigidity", "splitting-rigidity verdict");
  c_rig->add_option("model", model_arg)->required();
  c_rig->add_option("--torus-dim", torus_dim);
  c_rig->add_option("--rank", rank);
  c_rig->add_option("--mode", mode_name)->check(CLI::IsMember({"model", "cohomology"}));
  c_rig->add_flag("--class-H", class_h);
  c_rig->add_flag("--json", as_json);

  auto* c_cartan = app.add_subcommand("cartan", "Cartan model of a biquotient");
  c_cartan->add_option("model", model_arg)->required();
  c_cartan->add_flag("--json", as_json);

  auto* c_lg = app.add_subcommand("lower-grading", "wordlength grading of a biquotient");
  c_lg->add_option("model", model_arg)->required();
  int lg_n = -1;
  c_lg->add_option("--max-degree", lg_n);
  c_lg->add_flag("--json", as_json);

  auto* c_peel = app.add_subcommand("peel", "factor an automorphism of H (x) H*(T)");
  c_peel->add_option("model", model_arg)->required();
  c_peel->add_option("--torus-dim", torus_dim)->required();
  c_peel->add_option("file", peel_file)->required();
  int peel_rank_v = -1;
  c_peel->add_option("--rank", peel_rank_v);
  c_peel->add_flag("--normalize", normalize);
  c_peel->add_flag("--json", as_json);

  auto* c_mor = app.add_subcommand("morphism-check", "check a DGA morphism");
  c_mor->add_option("source", model_arg)->required();
  c_mor->add_option("target", model_arg2)->required();
  c_mor->add_option("--assign", assigns);
  c_mor->add_flag("--json", as_json);

  auto* c_cat = app.add_subcommand("catalog", "list or show built-in models");
  c_cat->add_option("action", catalog_action)->required();
  c_cat->add_option("name", catalog_name);
  c_cat->add_flag("--json", as_json);

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*c_coh) return cmd_cohomology(resolve_model(model_arg), max_degree, as_json, out);
    if (*c_ring) {
      if (top_value >= 0) top_flag = top_value;
      return cmd_ring(resolve_model(model_arg), top_flag, as_json, out);
    }
    if (*c_der) {
      std::optional<int> deg;
      if (dopt->count()) deg = degree;
      return cmd_derivations(resolve_model(model_arg), deg, all_negative, as_json, out);
    }
    if (*c_chain)
      return cmd_chain_derivations(resolve_model(model_arg), degree, induced, as_json, out);
    if (*c_rig)
      return cmd_rigidity(resolve_model(model_arg), torus_dim, rank, mode_name, class_h,
                          as_json, out);
    if (*c_cartan) return cmd_cartan(resolve_model(model_arg), as_json, out);
    if (*c_lg) {
      if (lg_n >= 0) lg_max_degree = lg_n;
      return cmd_lower_grading(resolve_model(model_arg), lg_max_degree, as_json, out);
    }
    if (*c_peel) {
      if (peel_rank_v >= 0) peel_rank = peel_rank_v;
      return cmd_peel(resolve_model(model_arg), torus_dim, peel_file, peel_rank, normalize,
                      as_json, out);
    }
    if (*c_mor)
      return cmd_morphism_check(resolve_model(model_arg), resolve_model(model_arg2), assigns,
                                as_json, out);
    if (*c_cat) return cmd_catalog(catalog_action, catalog_name, as_json, out);
    err << "no subcommand\n";
    return 2;
  } catch (const Error& e) {
    if (as_json) {
      json j{{"schema", 1}, {"error", e.what()}};
      out << j.dump(2) << "\n";
    }
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rho::cli
