#include "rho/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace rho {

namespace {

struct Token {
  enum Kind { Ident, Number, RationalTok, Punct, Newline, End } kind = End;
  std::string text;
  int line = 0, col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) { tokenize(); }
  const std::vector<Token>& tokens() const { return toks_; }

 private:
  void tokenize() {
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Token::Kind k, std::string t, int l, int c) {
      toks_.push_back({k, std::move(t), l, c});
    };
    while (i < s_.size()) {
      char c = s_[i];
      if (c == '\n') {
        push(Token::Newline, "\n", line, col);
        ++line;
        col = 1;
        ++i;
        continue;
      }
      if (c == '#') {
        while (i < s_.size() && s_[i] != '\n') ++i;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        ++col;
        continue;
      }
      int startcol = col;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
          ++j;
        push(Token::Ident, s_.substr(i, j - i), line, startcol);
        col += int(j - i);
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        if (j < s_.size() && s_[j] == '/' && j + 1 < s_.size() &&
            std::isdigit(static_cast<unsigned char>(s_[j + 1]))) {
          size_t k = j + 1;
          while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
          push(Token::RationalTok, s_.substr(i, k - i), line, startcol);
          col += int(k - i);
          i = k;
        } else {
          push(Token::Number, s_.substr(i, j - i), line, startcol);
          col += int(j - i);
          i = j;
        }
        continue;
      }
      if (std::string("{}:=^*+-").find(c) != std::string::npos) {
        push(Token::Punct, std::string(1, c), line, startcol);
        ++i;
        ++col;
        continue;
      }
      throw SyntaxError(line, startcol, "a token (got '" + std::string(1, c) + "')");
    }
    toks_.push_back({Token::End, "", line, col});
  }

  const std::string& s_;
  std::vector<Token> toks_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text), toks_(lex_.tokens()) {}

  ModelFile parse_file() {
    skip_newlines();
    ModelFile m = parse_item();
    skip_newlines();
    if (!at(Token::End)) throw err("end of input (exactly one model per file)");
    return m;
  }

  PolyAst parse_poly_only() {
    skip_newlines();
    PolyAst p = parse_poly();
    skip_newlines();
    if (!at(Token::End)) throw err("end of input");
    return p;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool at(Token::Kind k) const { return cur().kind == k; }
  bool at_punct(const char* p) const { return cur().kind == Token::Punct && cur().text == p; }
  bool at_ident(const char* t) const { return cur().kind == Token::Ident && cur().text == t; }
  void advance() { if (!at(Token::End)) ++pos_; }
  SyntaxError err(const std::string& expected) const {
    return SyntaxError(cur().line, cur().col, expected);
  }
  void skip_newlines() {
    while (at(Token::Newline)) advance();
  }
  Token expect(Token::Kind k, const std::string& what) {
    if (!at(k)) throw err(what);
    Token t = cur();
    advance();
    return t;
  }
  void expect_punct(const char* p) {
    if (!at_punct(p)) throw err(std::string("'") + p + "'");
    advance();
  }
  void end_statement() {
    if (at(Token::Newline)) { skip_newlines(); return; }
    if (at_punct("}") || at(Token::End)) return;
    throw err("end of statement");
  }
  int expect_int(const std::string& what) {
    Token t = expect(Token::Number, what);
    return std::stoi(t.text);
  }

  PolyAst parse_poly() {
    PolyAst out;
    bool neg = false;
    if (at_punct("-")) { neg = true; advance(); }
    else if (at_punct("+")) advance();
    for (;;) {
      out.push_back(parse_term(neg));
      if (at_punct("+")) { neg = false; advance(); continue; }
      if (at_punct("-")) { neg = true; advance(); continue; }
      break;
    }
    return out;
  }

  PolyTerm parse_term(bool negated) {
    PolyTerm t;
    t.line = cur().line;
    t.col = cur().col;
    t.coeff = 1;
    bool have_any = false;
    if (at(Token::Number) || at(Token::RationalTok)) {
      t.coeff = parse_rational(cur().text);
      advance();
      have_any = true;
    }
    while (at(Token::Ident)) {
      std::string name = cur().text;
      advance();
      int e = 1;
      if (at_punct("^")) {
        advance();
        e = expect_int("an exponent");
      }
      t.factors.push_back({name, e});
      have_any = true;
      if (at_punct("*")) {
        advance();
        if (!at(Token::Ident)) throw err("an identifier after '*'");
      }
    }
    if (!have_any) throw err("a term (coefficient or monomial)");
    if (negated) t.coeff = -t.coeff;
    return t;
  }

  ModelFile parse_item() {
    if (at_ident("model")) return parse_dga();
    if (at_ident("fd")) return parse_fd();
    if (at_ident("biquotient")) return parse_biquotient();
    throw err("'model', 'fd' or 'biquotient'");
  }

  struct GenDecl {
    std::string name;
    int degree;
    int line, col;
    std::optional<PolyAst> d;
  };

  void check_duplicate(const std::vector<GenDecl>& gens, const Token& t) {
    for (const auto& g : gens)
      if (g.name == t.text) throw DuplicateGenerator(t.line, t.col, t.text);
  }

  ModelFile parse_dga() {
    advance();  // model
    ModelFile m;
    m.kind = ModelFile::Kind::Dga;
    m.name = expect(Token::Ident, "a model name").text;
    expect_punct("{");
    skip_newlines();
    std::vector<GenDecl> gens;
    while (!at_punct("}")) {
      if (at_ident("gen")) {
        advance();
        Token nt = expect(Token::Ident, "a generator name");
        check_duplicate(gens, nt);
        expect_punct(":");
        int deg = expect_int("a degree");
        if (deg < 1) throw SyntaxError(nt.line, nt.col, "a generator degree >= 1");
        GenDecl g{nt.text, deg, nt.line, nt.col, std::nullopt};
        if (at_ident("d")) {
          advance();
          expect_punct("=");
          g.d = parse_poly();
        }
        gens.push_back(std::move(g));
      } else if (at_ident("d")) {
        advance();
        Token nt = expect(Token::Ident, "a generator name");
        expect_punct("=");
        PolyAst p = parse_poly();
        bool found = false;
        for (auto& g : gens) {
          if (g.name == nt.text) {
            g.d = std::move(p);
            found = true;
            break;
          }
        }
        if (!found) throw UnknownSymbol(nt.line, nt.col, nt.text);
      } else if (at_ident("top")) {
        advance();
        m.top = expect_int("a top degree");
      } else {
        throw err("'gen', 'd', 'top' or '}'");
      }
      end_statement();
    }
    expect_punct("}");
    std::vector<Generator> glist;
    for (const auto& g : gens) glist.push_back({g.name, g.degree});
    GcaPtr alg = FreeGCA::make(std::move(glist));
    std::vector<std::optional<Element>> d(gens.size());
    for (size_t i = 0; i < gens.size(); ++i)
      if (gens[i].d) d[i] = resolve_poly(*gens[i].d, alg);
    m.dga = DGA::make(alg, std::move(d));
    return m;
  }

  ModelFile parse_fd() {
    advance();  // fd
    ModelFile m;
    m.kind = ModelFile::Kind::Fd;
    m.name = expect(Token::Ident, "an algebra name").text;
    expect_punct("{");
    skip_newlines();
    std::vector<GenDecl> basis;
    struct MulDecl { std::string a, b; PolyAst value; int line, col; };
    std::vector<MulDecl> muls;
    while (!at_punct("}")) {
      if (at_ident("basis")) {
        advance();
        Token nt = expect(Token::Ident, "a basis element name");
        check_duplicate(basis, nt);
        expect_punct(":");
        int deg = expect_int("a degree");
        if (deg < 0) throw SyntaxError(nt.line, nt.col, "a degree >= 0");
        basis.push_back({nt.text, deg, nt.line, nt.col, std::nullopt});
      } else if (at_ident("mul")) {
        advance();
        Token a = expect(Token::Ident, "a basis element name");
        Token b = expect(Token::Ident, "a basis element name");
        expect_punct("=");
        muls.push_back({a.text, b.text, parse_poly(), a.line, a.col});
      } else if (at_ident("top")) {
        advance();
        m.top = expect_int("a top degree");
      } else {
        throw err("'basis', 'mul', 'top' or '}'");
      }
      end_statement();
    }
    expect_punct("}");
    // Stable sort by degree gives the canonical basis order.
    std::stable_sort(basis.begin(), basis.end(),
                     [](const GenDecl& x, const GenDecl& y) { return x.degree < y.degree; });
    std::vector<FDBasisElem> b;
    std::map<std::string, int> index;
    for (const auto& e : basis) {
      index[e.name] = int(b.size());
      b.push_back({e.name, e.degree});
    }
    const int n = int(b.size());
    std::vector<std::vector<FDAlgebra::SparseVec>> table(n, std::vector<FDAlgebra::SparseVec>(n));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    auto lookup = [&](const std::string& nm, int line, int col) {
      auto it = index.find(nm);
      if (it == index.end()) throw UnknownSymbol(line, col, nm);
      return it->second;
    };
    for (const auto& mu : muls) {
      int i = lookup(mu.a, mu.line, mu.col);
      int j = lookup(mu.b, mu.line, mu.col);
      std::map<int, Rational> acc;
      for (const auto& term : mu.value) {
        if (term.factors.empty()) {
          if (term.coeff != 0) acc[0] += term.coeff;  // constant = multiple of the unit
          continue;
        }
        if (term.factors.size() != 1 || term.factors[0].second != 1)
          throw SyntaxError(term.line, term.col, "a linear combination of basis elements");
        acc[lookup(term.factors[0].first, term.line, term.col)] += term.coeff;
      }
      FDAlgebra::SparseVec v;
      for (const auto& [k, c] : acc)
        if (c != 0) v.push_back({k, c});
      table[i][j] = std::move(v);
      given[i][j] = true;
    }
    // Fill the graded-commutative mirror of every given entry.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!given[i][j] || given[j][i]) continue;
        int sign = (b[i].degree % 2 && b[j].degree % 2) ? -1 : 1;
        FDAlgebra::SparseVec v = table[i][j];
        for (auto& [k, c] : v) c *= sign;
        table[j][i] = std::move(v);
        given[j][i] = true;
      }
    }
    m.fd = FDAlgebra::make(std::move(b), std::move(table));
    return m;
  }

  ModelFile parse_biquotient() {
    advance();  // biquotient
    ModelFile m;
    m.kind = ModelFile::Kind::Biquotient;
    m.name = expect(Token::Ident, "a biquotient name").text;
    expect_punct("{");
    skip_newlines();
    std::vector<GenDecl> bh, q;
    while (!at_punct("}")) {
      if (at_ident("bh")) {
        advance();
        Token nt = expect(Token::Ident, "a generator name");
        check_duplicate(bh, nt);
        check_duplicate(q, nt);
        expect_punct(":");
        int deg = expect_int("a degree");
        if (deg < 1) throw SyntaxError(nt.line, nt.col, "a generator degree >= 1");
        bh.push_back({nt.text, deg, nt.line, nt.col, std::nullopt});
      } else if (at_ident("q")) {
        advance();
        Token nt = expect(Token::Ident, "a generator name");
        check_duplicate(bh, nt);
        check_duplicate(q, nt);
        expect_punct(":");
        int deg = expect_int("a degree");
        if (deg < 1) throw SyntaxError(nt.line, nt.col, "a generator degree >= 1");
        GenDecl g{nt.text, deg, nt.line, nt.col, std::nullopt};
        if (!at_ident("dbar")) throw err("'dbar'");
        advance();
        expect_punct("=");
        g.d = parse_poly();
        q.push_back(std::move(g));
      } else {
        throw err("'bh', 'q' or '}'");
      }
      end_statement();
    }
    expect_punct("}");
    std::vector<Generator> glist;
    for (const auto& g : bh) glist.push_back({g.name, g.degree});
    for (const auto& g : q) glist.push_back({g.name, g.degree});
    GcaPtr alg = FreeGCA::make(std::move(glist));
    std::vector<Element> dbar;
    for (const auto& g : q) dbar.push_back(resolve_poly(*g.d, alg));
    m.biquotient = BiquotientData::make(alg, int(bh.size()), std::move(dbar));
    return m;
  }

  Lexer lex_;
  const std::vector<Token>& toks_;
  size_t pos_ = 0;
};

}  // namespace

Element resolve_poly(const PolyAst& poly, const GcaPtr& alg) {
  Element out(alg);
  for (const auto& term : poly) {
    std::vector<int> exps(alg->size(), 0);
    for (const auto& [name, e] : term.factors) {
      int idx = alg->index_of(name);
      if (idx < 0) throw UnknownSymbol(term.line, term.col, name);
      exps[idx] += e;
    }
    auto mono = alg->monomial(std::move(exps));
    if (!mono) continue;  // odd generator squared
    out.add_term(*mono, term.coeff);
  }
  return out;
}

ModelFile parse_model(const std::string& text) { return Parser(text).parse_file(); }

PolyAst parse_poly(const std::string& text) { return Parser(text).parse_poly_only(); }

bool ModelFile::same_content(const ModelFile& o) const {
  if (name != o.name || kind != o.kind || top != o.top) return false;
  switch (kind) {
    case Kind::Dga:
      return dga && o.dga && dga->same_presentation(*o.dga);
    case Kind::Fd: {
      if (!fd || !o.fd) return false;
      if (!(*fd)->same_table(**o.fd)) return false;
      for (int i = 0; i < (*fd)->dim(); ++i)
        if ((*fd)->elem(i).name != (*o.fd)->elem(i).name) return false;
      return true;
    }
    case Kind::Biquotient: {
      if (!biquotient || !o.biquotient) return false;
      const auto& a = *biquotient;
      const auto& b = *o.biquotient;
      if (a.bh_count() != b.bh_count()) return false;
      if (a.algebra()->size() != b.algebra()->size()) return false;
      for (int i = 0; i < a.algebra()->size(); ++i) {
        if (a.algebra()->gen(i).name != b.algebra()->gen(i).name) return false;
        if (a.algebra()->gen(i).degree != b.algebra()->gen(i).degree) return false;
      }
      for (int i = 0; i < a.q_count(); ++i)
        if (a.dbar()[i].str() != b.dbar()[i].str()) return false;
      return true;
    }
  }
  return false;
}

std::string print_model(const ModelFile& m) {
  std::ostringstream os;
  switch (m.kind) {
    case ModelFile::Kind::Dga: {
      const DGA& M = *m.dga;
      os << "model " << m.name << " {\n";
      for (int i = 0; i < M.algebra()->size(); ++i) {
        const Generator& g = M.algebra()->gen(i);
        os << "  gen " << g.name << " : " << g.degree;
        if (!M.d_gen(i).is_zero()) os << " d = " << M.d_gen(i).str();
        os << "\n";
      }
      if (m.top) os << "  top " << *m.top << "\n";
      os << "}\n";
      break;
    }
    case ModelFile::Kind::Fd: {
      const FDAlgebra& H = **m.fd;
      os << "fd " << m.name << " {\n";
      for (int i = 0; i < H.dim(); ++i)
        os << "  basis " << H.elem(i).name << " : " << H.degree_of(i) << "\n";
      for (int i = 1; i < H.dim(); ++i) {
        for (int j = i; j < H.dim(); ++j) {
          const auto& v = H.mul_basis(i, j);
          if (v.empty()) continue;
          os << "  mul " << H.elem(i).name << " " << H.elem(j).name << " = "
             << H.vec_str([&] {
                  linalg::Vec w(H.dim());
                  for (const auto& [k, c] : v) w[k] = c;
                  return w;
                }())
             << "\n";
        }
      }
      if (m.top) os << "  top " << *m.top << "\n";
      os << "}\n";
      break;
    }
    case ModelFile::Kind::Biquotient: {
      const BiquotientData& B = *m.biquotient;
      os << "biquotient " << m.name << " {\n";
      for (int i = 0; i < B.bh_count(); ++i) {
        const Generator& g = B.algebra()->gen(i);
        os << "  bh " << g.name << " : " << g.degree << "\n";
      }
      for (int k = 0; k < B.q_count(); ++k) {
        const Generator& g = B.algebra()->gen(B.bh_count() + k);
        os << "  q " << g.name << " : " << g.degree << " dbar = " << B.dbar()[k].str() << "\n";
      }
      os << "}\n";
      break;
    }
  }
  return os.str();
}

}  // namespace rho
