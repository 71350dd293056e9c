#include "eqsim/fixtures.hpp"

#include "eqsim/segmenter.hpp"

namespace eqsim::fixtures {

namespace {

constexpr std::string_view kWaveEquation = "$u_{tt} = au_{xx}$\n";
constexpr std::string_view kHeatEquation = "$u_t = au_{xx}$\n";

constexpr std::string_view kRadicalGroupedA = "$g = 1 + |z| + |f|^{1/2}$\n";
constexpr std::string_view kRadicalGroupedB = "$g = (1 + |z| + |f|)^{1/2}$\n";

constexpr std::string_view kNegativeExponentA = "$y = a + bx^{-1/2}$\n";
constexpr std::string_view kNegativeExponentB = "$y = a + bx - 1/2$\n";

constexpr std::string_view kDiffusionEquation = "$u_t = [f(u)u_x]_x + g(u)$\n";
constexpr std::string_view kWaveTypeEquation =
    "$u_{tt} = [f(u)u_x]_x + g(u)$\n";

constexpr std::string_view kLetterPhraseA = "The solute was in a container";
constexpr std::string_view kLetterPhraseB = "The exact solution was obtained";

constexpr std::string_view kSeparableA =
    R"fix(Let us consider the pantograph-type parabolic equation with logarithmic nonlinearity
$$u_t = au_{xx} + bu \ln \bar u + cu$$ (i)
where $\bar u = u(px, qt)$ and $0 < p, q < 1$. We will now prove that equation (i) admits a multiplicative separable solution of the form
$$u(x, t) = f(x) g(t)$$ (ii)
Indeed, substituting expression (ii) into equation (i) and separating the variables, we get nonlinear pantograph-type ODEs describing the functions $f = f(x)$ and $g = g(t)$:
$$af''_{xx} + bf \ln \bar f + kf = 0$$
$$g'_t - bg \ln \bar g + (k - c)g = 0$$
where $k$ is an arbitrary constant, and $\bar f = f(px)$, $\bar g = g(qt)$.
)fix";

constexpr std::string_view kSeparableB =
    R"fix(Let us consider the hyperbolic equation with logarithmic nonlinearity
$$u_{tt} = au_{xx} + bu \ln u + cu$$ (i)
We will now prove that equation (i) admits a multiplicative separable solution of the form
$$u(x, t) = f(x) g(t)$$ (ii)
Indeed, substituting expression (ii) into equation (i) and separating the variables, we get nonlinear ODEs describing the functions $f = f(x)$ and $g = g(t)$:
$$af''_{xx} + bf \ln f + kf = 0$$
$$g''_{tt} - bg \ln g + (k - c)g = 0$$
where $k$ is an arbitrary constant.
)fix";

constexpr std::string_view kSeparableASpanish =
    R"fix(Consideremos la ecuación parabólica de tipo pantógrafo con no linealidad logarítmica
$$u_t = au_{xx} + bu \ln \bar u + cu$$ (i)
donde $\bar u = u(px, qt)$ y $0 < p, q < 1$. Ahora demostraremos que la ecuación (i) admite una solución separable multiplicativa de la forma
$$u(x, t) = f(x) g(t)$$ (ii)
En efecto, sustituyendo la expresión (ii) en la ecuación (i) y separando las variables, obtenemos EDOs no lineales de tipo pantógrafo que describen las funciones $f = f(x)$ y $g = g(t)$:
$$af''_{xx} + bf \ln \bar f + kf = 0$$
$$g'_t - bg \ln \bar g + (k - c)g = 0$$
donde $k$ es una constante arbitraria, y $\bar f = f(px)$, $\bar g = g(qt)$.
)fix";

constexpr std::string_view kGalleryA =
    R"fix($y = a + x(b + x)$
$y = (a + x)(b + x)$
$g = 1 + z + f ^{1/2}$
$y = a + bx^{-1/2}$
$y = a + be^x$
$z = a \sin(x) - 2y$
$y_x = a + bex$
$y' = \exp(ax) - by + c$
$y' = axy + b(x)y^2$
$y' = a(x)y + b(x)y^2$
$y' = a(x)y + b(x)y^{k+1}$
$y'' = ay^2 + b$
$y'' = ay^2 + bx$
$y'' + e^x y' + f(y) = 0$
$y'' + ay' + by = 0$
$y'' + axy' + f(y) = 0$
$u_t = [f(x)u]_x + g(x)$
$u_t = f(u)u_{xx} + g(u)$
$u_t = f(u)u_{xx} + g(u_x)u$
$u_t = [f(u)u_x]_x + au_x$
$u_t = [f(x)u]_{xx} + g(u_x)$
$u_t = [f(x)u]_x + g(u)$
$u_t = [f(x)u]_x + g(u_x)$
$u_{tt} = [f(u)u_x]_x + g(u)$
$u_{tt} = [f(u)u_x]_x + au_x$
$u_{tt} = [f(u)u_x]_x + g(u_x)$
$u_{tt} = [f(u)u_x]_x + g(u, u_x)$
$u_{tt} = [f(uu_x)]_x + g(u, u_x)$
$u_{xt} = [f(uu_x)]_x + g(u/u_x)$
$iu_t = au_{xx} + f(u)u$
)fix";

constexpr std::string_view kGalleryB =
    R"fix($y = (a + x)(b + x)$
$y = (a + x)/(b + x)$
$g = (1 + z + f)^{1/2}$
$y = a + bx - 1/2$
$y = a + bex$
$z = a \sin(x - 2y)$
$yx = a + bex$
$y' = \exp(ax - by + c)$
$y' = a(x)y + b(x)y^2$
$y' = a(x)y + b(x)y^2 + 1$
$y' = a(x)y + b(x)y^k + 1$
$y'' = ay^2 + b + x$
$y'' = ay^2 + b(x)$
$y'' + exy' + f(y) = 0$
$y'' + ay' + b y = 0$
$y'' + a(xy)' + f(y) = 0$
$u_t = [f(x)u_x]_x + g(x)$
$u_t = [f(u)u_x]_x + g(u)$
$u_t = f(u)u_{xx} + g(u_x)/u$
$u_t = [f(u)u_x]_x + au_x$
$u_t = [f(x)u_x]_x + g(u_x)$
$u_t = [f(x, u)]_x + g(u)$
$u_t = [f(x, u)]_x + g(u_x)$
$u_{tt} = [f(u)u_x]_x + g(u)u_x$
$u_{tt} = [f(u)u_x]_x + au_x$
$u_{tt} = [f(u)u_x]_x + xg(u_x)$
$u_{tt} = [f(u)u_x]_x + g(u, u_x)$
$u_{tt} = [f(u, u_x)]_x + g(u, u_x)$
$u_{xt} = [f(uu_x)]_x + g(uu_x)$
$iu_t = au_{xx} + f(u)u_x$
)fix";

}  // namespace

const std::vector<FixturePair>& builtin_pairs() {
  static const std::vector<FixturePair> pairs = {
      {"wave-vs-heat", kWaveEquation, kHeatEquation, false},
      {"radical-grouping", kRadicalGroupedA, kRadicalGroupedB, false},
      {"negative-exponent", kNegativeExponentA, kNegativeExponentB, false},
      {"diffusion-vs-wave", kDiffusionEquation, kWaveTypeEquation, false},
      {"letter-phrases", kLetterPhraseA, kLetterPhraseB, true},
      {"separable-solutions", kSeparableA, kSeparableB, false},
      {"formula-gallery", kGalleryA, kGalleryB, false},
      {"self-identity", kSeparableA, kSeparableA, false},
  };
  return pairs;
}

std::string_view wave_equation_doc() { return kWaveEquation; }
std::string_view heat_equation_doc() { return kHeatEquation; }
std::string_view separable_solutions_a() { return kSeparableA; }
std::string_view separable_solutions_b() { return kSeparableB; }
std::string_view separable_solutions_a_spanish() { return kSeparableASpanish; }
std::string_view formula_gallery_a() { return kGalleryA; }
std::string_view formula_gallery_b() { return kGalleryB; }
std::string_view letter_phrase_a() { return kLetterPhraseA; }
std::string_view letter_phrase_b() { return kLetterPhraseB; }

std::vector<FixtureRow> run_builtin(const Policy& policy) {
  std::vector<FixtureRow> rows;
  for (const auto& pair : builtin_pairs()) {
    FixtureRow row;
    row.name = pair.name;
    ParseOptions options_a{pair.name + ":a", true, true, true};
    ParseOptions options_b{pair.name + ":b", true, true, true};
    Document a = parse_document(pair.text_a, options_a);
    Document b = parse_document(pair.text_b, options_b);

    SimilarityReport fragment = score_fragment(a, b, policy);
    row.fragment = {true, fragment.si_a_given_b, fragment.si_b_given_a};
    SimilarityReport method1 = score_method1(a, b, policy);
    row.method1 = {true, method1.si_a_given_b, method1.si_b_given_a};
    SimilarityReport method2 = score_method2(a, b, policy);
    row.method2 = {true, method2.si_a_given_b, method2.si_b_given_a};
    if (pair.letters) {
      SimilarityReport demo = letter_fragment_demo(pair.text_a, pair.text_b,
                                                   policy.letter_min_match);
      row.letters = {true, demo.si_a_given_b, demo.si_b_given_a};
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> regressions(const std::vector<FixtureRow>& rows) {
  std::vector<std::string> failures;
  auto fail = [&](const std::string& message) { failures.push_back(message); };
  auto row_named = [&](std::string_view name) -> const FixtureRow* {
    for (const auto& r : rows)
      if (r.name == name) return &r;
    return nullptr;
  };
  auto require_row = [&](std::string_view name) -> const FixtureRow* {
    const FixtureRow* row = row_named(name);
    if (!row) fail(std::string(name) + ": row missing");
    return row;
  };

  if (const FixtureRow* r = require_row("wave-vs-heat")) {
    if (r->fragment.a_given_b != 100.0 * 7 / 8)
      fail("wave-vs-heat: fragment a|b is " +
           format_percent(r->fragment.a_given_b) + ", expected 87.5");
  }
  for (std::string_view name : {"radical-grouping", "negative-exponent"}) {
    const FixtureRow* r = require_row(name);
    if (!r) continue;
    if (r->fragment.a_given_b != 100.0 || r->fragment.b_given_a != 100.0)
      fail(std::string(name) + ": fragment must be 100.0 both directions");
    if (r->method1.a_given_b != 0.0 || r->method1.b_given_a != 0.0)
      fail(std::string(name) + ": method1 must be 0.0 both directions");
  }
  if (const FixtureRow* r = require_row("letter-phrases")) {
    if (!r->letters.present || r->letters.a_given_b < 60.0 ||
        r->letters.a_given_b > 75.0)
      fail("letter-phrases: letter index a|b outside [60, 75]");
  }
  for (std::string_view name : {"separable-solutions", "formula-gallery"}) {
    const FixtureRow* r = require_row(name);
    if (!r) continue;
    if (r->fragment.a_given_b < r->method2.a_given_b ||
        r->fragment.b_given_a < r->method2.b_given_a)
      fail(std::string(name) + ": fragment index below method2 index");
  }
  if (const FixtureRow* r = require_row("self-identity")) {
    for (const FixtureCell* cell : {&r->fragment, &r->method1, &r->method2}) {
      if (cell->present &&
          (cell->a_given_b != 100.0 || cell->b_given_a != 100.0))
        fail("self-identity: a self comparison is not 100.0");
    }
  }
  return failures;
}

}  // namespace eqsim::fixtures
