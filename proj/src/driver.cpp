#include "ncres/driver.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ncres/errors.hpp"
#include "ncres/parse.hpp"
#include "ncres/poly_ops.hpp"
#include "ncres/series.hpp"
#include "ncres/splitting.hpp"

namespace ncres {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> splitOn(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

Rational rationalOrThrow(const std::string& text, std::size_t line) {
  auto q = parseRational(text);
  if (!q) throw ParseError("not a rational number: '" + text + "'", 0, line);
  return *q;
}

unsigned unsignedOrThrow(const std::string& text, std::size_t line) {
  auto q = parseRational(text);
  if (!q || !isInteger(*q) || *q < 0 || !q->get_num().fits_uint_p()) {
    throw ParseError("expected a non-negative integer, got '" + text + "'", 0, line);
  }
  return static_cast<unsigned>(q->get_num().get_ui());
}

std::string tupleString(const std::vector<Rational>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += toString(p[i]);
  }
  return s + ")";
}

std::vector<Rational> minus(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

bool isOrigin(const std::vector<Rational>& p) {
  return std::all_of(p.begin(), p.end(), [](const Rational& q) { return q == 0; });
}

std::vector<std::string> printed(const std::vector<Poly>& ideal, const VarContext& ctx) {
  std::vector<std::string> out;
  for (const auto& g : ideal) out.push_back(toString(g, ctx));
  return out;
}

}  // namespace

std::vector<Poly> Problem::generators() const {
  std::vector<Poly> out;
  for (const auto& e : ideal) out.push_back(parseExpr(e, ctx));
  return out;
}

Problem parseProblem(std::string_view text) {
  enum class Section { None, Vars, Ideal, Divisor, Points, Options };
  Section section = Section::None;
  std::vector<std::string> names;
  std::vector<VarKind> kinds;
  std::vector<std::pair<std::string, std::size_t>> ideal, divisor;
  struct RawPoint {
    std::string label;
    std::vector<std::string> values;
    std::size_t line;
  };
  std::vector<RawPoint> points;
  Problem problem;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line == "vars:") {
      section = Section::Vars;
      continue;
    }
    if (line == "ideal:") {
      section = Section::Ideal;
      continue;
    }
    if (line == "divisor:") {
      section = Section::Divisor;
      continue;
    }
    if (line == "points:") {
      section = Section::Points;
      continue;
    }
    if (line == "options:") {
      section = Section::Options;
      continue;
    }
    switch (section) {
      case Section::None:
        throw ParseError("expected a section header (vars:, ideal:, divisor:, points:, options:)", 0, lineNo);
      case Section::Vars: {
        auto colon = line.find(':');
        std::string name = trim(line.substr(0, colon));
        VarKind kind = VarKind::Free;
        if (colon != std::string::npos) {
          std::string k = trim(line.substr(colon + 1));
          auto parsed = parseVarKind(k);
          if (!parsed) throw ParseError("unknown variable kind '" + k + "'", 0, lineNo);
          kind = *parsed;
        }
        if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
          throw ParseError("bad variable name '" + name + "'", 0, lineNo);
        }
        for (char c : name) {
          if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
            throw ParseError("bad variable name '" + name + "'", 0, lineNo);
          }
        }
        if (std::find(names.begin(), names.end(), name) != names.end()) {
          throw ParseError("variable '" + name + "' declared twice", 0, lineNo);
        }
        names.push_back(name);
        kinds.push_back(kind);
        break;
      }
      case Section::Ideal:
        ideal.emplace_back(line, lineNo);
        break;
      case Section::Divisor:
        for (auto& n : splitOn(line, ',')) {
          if (!n.empty()) divisor.emplace_back(n, lineNo);
        }
        break;
      case Section::Points: {
        auto eq = line.find('=');
        std::string label = eq == std::string::npos ? "" : trim(line.substr(0, eq));
        std::string tuple = trim(eq == std::string::npos ? line : line.substr(eq + 1));
        if (tuple.size() < 2 || tuple.front() != '(' || tuple.back() != ')') {
          throw ParseError("expected a point as label = (v1, ..., vn)", 0, lineNo);
        }
        if (label.empty()) label = "p" + std::to_string(points.size() + 1);
        points.push_back({label, splitOn(std::string_view(tuple).substr(1, tuple.size() - 2), ','), lineNo});
        break;
      }
      case Section::Options: {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", 0, lineNo);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "truncation") {
          problem.config.truncation = unsignedOrThrow(value, lineNo);
          if (problem.config.truncation == 0) throw ParseError("truncation must be positive", 0, lineNo);
        } else if (key == "max-steps") {
          problem.config.maxSteps = unsignedOrThrow(value, lineNo);
        } else if (key == "nc-mode") {
          auto m = parseNCMode(value);
          if (!m) throw ParseError("unknown nc-mode '" + value + "'", 0, lineNo);
          problem.ncMode = *m;
        } else if (key == "transform") {
          if (value == "controlled") {
            problem.config.transform = TransformKind::Controlled;
          } else if (value == "strict") {
            problem.config.transform = TransformKind::Strict;
          } else if (value == "total") {
            problem.config.transform = TransformKind::Total;
          } else {
            throw ParseError("unknown transform '" + value + "'", 0, lineNo);
          }
        } else {
          throw ParseError("unknown option '" + key + "'", 0, lineNo);
        }
        break;
      }
    }
  }
  if (names.empty()) throw ParseError("no variables declared", 0, lineNo);
  for (const auto& [name, line] : divisor) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError("divisor names undeclared variable '" + name + "'", 0, line);
    auto& kind = kinds[static_cast<std::size_t>(it - names.begin())];
    if (kind == VarKind::Parameter) throw ParseError("parameter '" + name + "' cannot be divisorial", 0, line);
    kind = VarKind::Divisorial;
  }
  try {
    problem.ctx = VarContext(names, kinds);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 0, 1);
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (kinds[i] == VarKind::Divisorial) problem.divisor.push_back(names[i]);
  }
  if (ideal.empty()) throw ParseError("empty ideal: section ideal: has no generators", 0, lineNo);
  for (const auto& [expr, line] : ideal) {
    try {
      parseExpr(expr, problem.ctx);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " (column " + std::to_string(e.position() + 1) + ")", e.position(), line);
    }
    problem.ideal.push_back(expr);
  }
  for (const auto& p : points) {
    if (p.values.size() != names.size()) {
      throw ParseError("point '" + p.label + "' has " + std::to_string(p.values.size()) + " coordinates, expected " +
                           std::to_string(names.size()),
                       0, p.line);
    }
    SamplePoint sp{p.label, {}};
    for (const auto& v : p.values) sp.coords.push_back(rationalOrThrow(v, p.line));
    problem.samplePoints.push_back(std::move(sp));
  }
  return problem;
}

Problem loadProblem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'", 0, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parseProblem(buf.str());
}

std::vector<Rational> parsePointSpec(std::string_view text, const VarContext& ctx) {
  std::vector<Rational> p(ctx.size(), 0);
  for (const auto& item : splitOn(text, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected name=value in point '" + std::string(text) + "'", 0, 0);
    std::string name = trim(std::string_view(item).substr(0, eq));
    auto idx = ctx.index(name);
    if (!idx) throw ParseError("point names unknown variable '" + name + "'", 0, 0);
    p[*idx] = rationalOrThrow(trim(std::string_view(item).substr(eq + 1)), 0);
  }
  return p;
}

// ---- resolution loop ------------------------------------------------------

std::string_view toString(Outcome outcome) {
  switch (outcome) {
    case Outcome::TerminatedNC:
      return "terminated-NC";
    case Outcome::StepLimit:
      return "step-limit";
    case Outcome::Unsupported:
      return "unsupported";
  }
  return "unsupported";
}

namespace {

// Up to this many coordinates every 0/1 point is sampled; above it only the
// origin and the unit points.
constexpr std::size_t kFullStrata = 10;

struct Candidate {
  std::string label;
  std::vector<Rational> coords;
};

std::vector<Candidate> candidates(const Chart& chart, const std::vector<SamplePoint>& user) {
  std::vector<Candidate> out;
  auto present = [&](const std::vector<Rational>& p) {
    return std::any_of(out.begin(), out.end(), [&](const Candidate& c) { return c.coords == p; });
  };
  for (const auto& u : user) {
    if (!onVertex(chart, u.coords) && !present(u.coords)) out.push_back({u.label, u.coords});
  }
  std::vector<std::size_t> coords;
  for (std::size_t v = 0; v < chart.ctx.size(); ++v) {
    if (!chart.ctx.isParameter(v)) coords.push_back(v);
  }
  std::vector<std::vector<Rational>> strata;
  if (coords.size() <= kFullStrata) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << coords.size()); ++bits) {
      std::vector<Rational> p(chart.ctx.size(), 0);
      for (std::size_t k = 0; k < coords.size(); ++k) {
        if ((bits >> k) & 1U) p[coords[k]] = 1;
      }
      strata.push_back(std::move(p));
    }
  } else {
    strata.emplace_back(chart.ctx.size(), 0);
    for (std::size_t v : coords) {
      std::vector<Rational> p(chart.ctx.size(), 0);
      p[v] = 1;
      strata.push_back(std::move(p));
    }
  }
  for (auto& p : strata) {
    if (onVertex(chart, p) || present(p)) continue;
    out.push_back({isOrigin(p) ? "origin" : tupleString(p), std::move(p)});
  }
  return out;
}

std::vector<LocusVerdict> classify(const Chart& chart, const std::vector<Candidate>& cands, const Problem& problem) {
  NCOptions opts;
  opts.truncation = problem.config.truncation;
  opts.mode = problem.ncMode;
  std::vector<LocusVerdict> out;
  for (const auto& c : cands) out.push_back({c.label, c.coords, isNCAt(chart.ideal, chart.ctx, c.coords, opts)});
  return out;
}

// Divisorial variables not vanishing at p are no divisor components there;
// moving the chart to p makes them ordinary coordinates for good.
VarContext localContext(const VarContext& ctx, const std::vector<Rational>& p) {
  VarContext out = ctx;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (ctx.isDivisorial(i) && p[i] != 0) out = out.withKind(i, VarKind::Free);
  }
  return out;
}

bool userLabel(const std::vector<SamplePoint>& user, const LocusVerdict& v) {
  return std::any_of(user.begin(), user.end(), [&](const SamplePoint& u) { return u.coords == v.coords; });
}

}  // namespace

ResolutionTrace runResolveExceptNC(const Problem& problem) {
  ResolutionTrace trace;
  trace.caveat =
      "sampled-max: the maximum of the invariant is taken over the chart origin, the points with coordinates in {0,1} "
      "and the sample points only; global maximality is not claimed";
  // Candidates are points of the total space, so parameters are coordinates
  // here; the NC verdicts at points already read them that way.
  VarContext ctx = problem.ctx;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (ctx.isParameter(i)) ctx = ctx.withKind(i, VarKind::Free);
  }
  Chart chart = initialChart(ctx, problem.generators());
  std::vector<SamplePoint> user = problem.samplePoints;
  for (const auto& u : user) {
    if (u.coords.size() != problem.ctx.size()) throw Error("sample point '" + u.label + "' has the wrong dimension");
  }
  const unsigned N = problem.config.truncation;
  // A stage blows up the components of the max locus one at a time; the
  // invariant is constant within a stage and drops strictly between stages.
  std::optional<InvariantVector> stageInv;
  std::size_t stage = 0;
  std::optional<InvariantVector> lastCenterInv;  // of the previous blow-up

  for (std::size_t step = 0;; ++step) {
    const std::string chartId = "B" + std::to_string(step);
    trace.chart = chartId;
    trace.finalIdeal = printed(chart.ideal, chart.ctx);
    std::vector<LocusVerdict> verdicts = classify(chart, candidates(chart, user), problem);
    trace.finalVerdicts = verdicts;

    std::vector<const LocusVerdict*> bad;
    for (const auto& v : verdicts) {
      if (v.verdict.status == NCStatus::Unsupported) {
        trace.outcome = Outcome::Unsupported;
        trace.offending = v;
        trace.unsupportedReason = "NC verdict at " + v.label + ": " + v.verdict.reason;
        return trace;
      }
      if (v.verdict.status == NCStatus::NotNC) bad.push_back(&v);
    }
    if (bad.empty()) {
      trace.outcome = Outcome::TerminatedNC;
      return trace;
    }
    if (step >= problem.config.maxSteps) {
      trace.outcome = Outcome::StepLimit;
      return trace;
    }

    const LocusVerdict* chosen = nullptr;
    std::optional<InvariantResult> best;
    VarContext bestCtx;
    for (const LocusVerdict* v : bad) {
      InvariantResult r;
      VarContext here = localContext(chart.ctx, v->coords);
      try {
        r = canonicalInvariant(translate(chart.ideal, v->coords), here, N);
      } catch (const UnsupportedError& e) {
        trace.outcome = Outcome::Unsupported;
        trace.offending = *v;
        trace.unsupportedReason = "invariant at " + v->label + ": " + e.what();
        return trace;
      }
      // Over the last center the invariant must have dropped.
      if (lastCenterInv && v->coords.back() == 0 && !(r.inv < *lastCenterInv)) {
        throw InternalError("invariant " + toString(r.inv) + " at " + v->label +
                            " on the exceptional divisor did not drop below " + toString(*lastCenterInv));
      }
      if (!best || best->inv < r.inv) {
        best = std::move(r);
        bestCtx = std::move(here);
        chosen = v;
      }
    }
    if (stageInv && *stageInv < best->inv) {
      throw InternalError("invariant increased: " + toString(best->inv) + " after " + toString(*stageInv));
    }
    if (!stageInv || best->inv < *stageInv) {
      ++stage;
      stageInv = best->inv;
    }

    // The center must avoid every NC-certified sample point.
    const std::vector<Rational>& p0 = chosen->coords;
    std::vector<std::vector<Rational>> certified;
    for (const auto& v : verdicts) {
      if (v.verdict.status == NCStatus::NC && userLabel(user, v)) {
        certified.push_back(mapPoint(minus(v.coords, p0), best->change));
      }
    }
    if (!centerDisjointFromPoints(best->center, certified)) {
      throw InternalError("center " + toString(best->center, bestCtx) + " meets an NC-certified sample point");
    }

    Chart local = chart;
    local.ctx = bestCtx;
    local.ideal = best->ideal;
    if (!isOrigin(p0) || !best->change.empty()) local.vertex = 0;
    Chart next;
    switch (problem.config.transform) {
      case TransformKind::Controlled:
        next = controlledTransform(local, best->center);
        break;
      case TransformKind::Strict:
        next = strictTransform(local, best->center);
        break;
      case TransformKind::Total:
        next = cobordantBlowup(local, best->center);
        break;
    }

    ResolutionStep rec;
    rec.chart = chartId;
    rec.stage = stage;
    rec.locus = *chosen;
    rec.invariant = best->inv;
    rec.exact = best->exact;
    rec.center = best->center;
    rec.centerCtx = bestCtx;
    rec.weights = next.history.back().weights;
    rec.kind = problem.config.transform;
    rec.verdicts = verdicts;
    for (std::size_t k = 0; k < next.exceptional.size(); ++k) {
      rec.ledger.push_back({k + 1, next.ctx.name(next.exceptional[k].var), next.exceptional[k].removed});
    }
    rec.idealAfter = printed(next.ideal, next.ctx);
    trace.steps.push_back(std::move(rec));

    // Carry the sample points across; those inside the center are absorbed.
    std::vector<SamplePoint> carried;
    for (const auto& u : user) {
      std::vector<Rational> q = mapPoint(minus(u.coords, p0), best->change);
      if (!centerDisjointFromPoints(best->center, {q})) continue;
      carried.push_back({u.label, liftPoint(q)});
    }
    user = std::move(carried);
    lastCenterInv = best->inv;
    chart = std::move(next);
  }
}

// ---- JSON -----------------------------------------------------------------

namespace {

Json rationalList(const std::vector<Rational>& p) {
  Json a = Json::array();
  for (const auto& q : p) a.push_back(toString(q));
  return a;
}

Json toJson(const NCVerdict& v) {
  Json j;
  j["status"] = std::string(toString(v.status));
  j["reason"] = v.reason;
  j["codimension"] = v.codimension;
  j["branches"] = v.branches;
  j["multiplicities"] = v.multiplicities;
  j["coordinates"] = v.coordinates;
  j["field"] = v.field;
  j["truncation"] = v.truncation;
  j["certificateDegree"] = v.certificateDegree;
  j["certificate"] = v.certificate;
  j["exact"] = v.exact;
  return j;
}

Json toJson(const LocusVerdict& v) {
  Json j;
  j["label"] = v.label;
  j["point"] = rationalList(v.coords);
  j["verdict"] = toJson(v.verdict);
  return j;
}

Json toJson(const InvariantVector& inv) {
  Json j;
  j["text"] = toString(inv);
  Json entries = Json::array();
  for (const auto& e : inv.entries()) {
    Json x;
    x["value"] = toString(e.value);
    x["plus"] = e.plus;
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  j["terminal"] = inv.infinite();
  j["normalized"] = toString(normalizeInvariant(inv));
  return j;
}

Json toJson(const WeightedCenter& c, const VarContext& ctx) {
  Json j;
  j["text"] = toString(c, ctx);
  Json entries = Json::array();
  for (const auto& e : c.entries()) {
    Json x;
    x["var"] = ctx.name(e.var);
    x["exponent"] = toString(e.exponent);
    x["divisorial"] = e.divisorial;
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json toJson(const BlowupWeights& w, const WeightedCenter& c, const VarContext& ctx) {
  Json j;
  j["w"] = w.w.get_str();
  Json per;
  for (std::size_t i = 0; i < c.size(); ++i) per[ctx.name(c.entries()[i].var)] = w.perVariable[i].get_str();
  j["perVariable"] = std::move(per);
  return j;
}

Json toJson(const std::vector<ExceptionalEntry>& ledger) {
  Json a = Json::array();
  for (const auto& e : ledger) {
    Json x;
    x["step"] = e.step;
    x["var"] = e.var;
    x["removed"] = e.removed;
    a.push_back(std::move(x));
  }
  return a;
}

Json verdictList(const std::vector<LocusVerdict>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(toJson(v));
  return a;
}

Json problemJson(const Problem& p) {
  Json j;
  Json vars = Json::array();
  for (std::size_t i = 0; i < p.ctx.size(); ++i) {
    Json v;
    v["name"] = p.ctx.name(i);
    v["kind"] = std::string(toString(p.ctx.kind(i)));
    vars.push_back(std::move(v));
  }
  j["vars"] = std::move(vars);
  j["ideal"] = p.ideal;
  j["divisor"] = p.divisor;
  Json pts = Json::array();
  for (const auto& s : p.samplePoints) {
    Json x;
    x["label"] = s.label;
    x["point"] = rationalList(s.coords);
    pts.push_back(std::move(x));
  }
  j["points"] = std::move(pts);
  j["ncMode"] = std::string(toString(p.ncMode));
  j["truncation"] = p.config.truncation;
  j["maxSteps"] = p.config.maxSteps;
  j["transform"] = std::string(toString(p.config.transform));
  return j;
}

std::vector<std::string> changeLines(const CoordinateChange& change, const VarContext& ctx) {
  std::vector<std::string> out;
  for (const auto& s : change) {
    out.push_back(ctx.name(s.var) + " -> " + toString(s.replacement, ctx) + (s.exact ? "" : " (truncated)"));
  }
  return out;
}

}  // namespace

Json toJson(const ResolutionTrace& trace) {
  Json j;
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    Json x;
    x["chart"] = s.chart;
    x["stage"] = s.stage;
    x["locus"] = toJson(s.locus);
    x["invariant"] = toJson(s.invariant);
    x["exact"] = s.exact;
    x["center"] = toJson(s.center, s.centerCtx);
    x["weights"] = toJson(s.weights, s.center, s.centerCtx);
    x["transform"] = std::string(toString(s.kind));
    x["verdicts"] = verdictList(s.verdicts);
    x["exceptional"] = toJson(s.ledger);
    x["idealAfter"] = s.idealAfter;
    steps.push_back(std::move(x));
  }
  j["steps"] = std::move(steps);
  j["outcome"] = std::string(toString(trace.outcome));
  j["chart"] = trace.chart;
  j["finalIdeal"] = trace.finalIdeal;
  j["finalVerdicts"] = verdictList(trace.finalVerdicts);
  if (trace.offending) {
    j["offending"] = toJson(*trace.offending);
    j["unsupportedReason"] = trace.unsupportedReason;
  }
  j["caveat"] = trace.caveat;
  return j;
}

// ---- modes ----------------------------------------------------------------

std::optional<Mode> parseMode(std::string_view text) {
  for (Mode m : {Mode::Invariant, Mode::Center, Mode::Blowup, Mode::NCFactor, Mode::Split, Mode::Resolve}) {
    if (toString(m) == text) return m;
  }
  return std::nullopt;
}

std::string_view toString(Mode mode) {
  switch (mode) {
    case Mode::Invariant:
      return "invariant";
    case Mode::Center:
      return "center";
    case Mode::Blowup:
      return "blowup";
    case Mode::NCFactor:
      return "ncfactor";
    case Mode::Split:
      return "split";
    case Mode::Resolve:
      return "resolve";
  }
  return "invariant";
}

namespace {

void requirePrincipal(Mode mode, const Problem& problem) {
  if (problem.ideal.size() != 1) {
    throw ParseError("mode " + std::string(toString(mode)) + " needs exactly one generator in ideal:, got " +
                         std::to_string(problem.ideal.size()),
                     0, 0);
  }
}

Report invariantReport(Mode mode, const Problem& problem, const std::vector<Rational>& point, Json& j) {
  const VarContext& ctx = problem.ctx;
  auto ideal = translate(problem.generators(), point);
  InvariantResult r = canonicalInvariant(ideal, ctx, problem.config.truncation);
  Report rep;
  std::ostringstream out;
  out << toString(r.inv) << ", center " << toString(r.center, ctx) << "\n";
  out << "normalized " << toString(normalizeInvariant(r.inv)) << (r.exact ? "" : " (truncated maximal contact)") << "\n";
  for (const auto& line : changeLines(r.change, ctx)) out << "  " << line << "\n";
  j["invariant"] = toJson(r.inv);
  j["exact"] = r.exact;
  j["center"] = toJson(r.center, ctx);
  j["change"] = changeLines(r.change, ctx);
  if (mode == Mode::Invariant) {
    rep.text = out.str();
    return rep;
  }
  BlowupWeights w = blowupWeights(r.center);
  out << "weights w=" << w.w.get_str();
  for (std::size_t i = 0; i < r.center.size(); ++i) {
    out << (i ? ", " : ": ") << ctx.name(r.center.entries()[i].var) << " " << w.perVariable[i].get_str();
  }
  out << "\n";
  j["weights"] = toJson(w, r.center, ctx);
  j["admissible"] = admissible(r.ideal, r.center);
  if (mode == Mode::Center) {
    rep.text = out.str();
    return rep;
  }
  Chart chart = initialChart(ctx, r.ideal);
  Chart next;
  switch (problem.config.transform) {
    case TransformKind::Controlled:
      next = controlledTransform(chart, r.center);
      break;
    case TransformKind::Strict:
      next = strictTransform(chart, r.center);
      break;
    case TransformKind::Total:
      next = cobordantBlowup(chart, r.center);
      break;
  }
  const auto& ex = next.exceptional.back();
  out << toString(problem.config.transform) << " transform, exceptional " << next.ctx.name(ex.var) << ":\n";
  for (std::size_t i = 0; i < next.ideal.size(); ++i) {
    out << "  " << toString(next.ideal[i], next.ctx) << "   [" << next.ctx.name(ex.var) << "^" << ex.removed[i]
        << " removed]\n";
  }
  j["transform"] = std::string(toString(problem.config.transform));
  j["exceptional"] = toJson(std::vector<ExceptionalEntry>{{1, next.ctx.name(ex.var), ex.removed}});
  j["idealAfter"] = printed(next.ideal, next.ctx);
  j["groupOrder"] = next.groupOrder.get_str();
  rep.text = out.str();
  return rep;
}

Report ncfactorReport(const Problem& problem, const std::vector<Rational>& point, Json& j) {
  NCOptions opts;
  opts.truncation = problem.config.truncation;
  opts.mode = problem.ncMode;
  auto gens = problem.generators();
  NCVerdict v = isNCAt(gens, problem.ctx, point, opts);
  Report rep;
  std::ostringstream out;
  out << toString(v.status) << ": " << v.reason << "\n";
  if (v.status == NCStatus::NC) {
    out << "codimension " << v.codimension << ", field " << v.field << "\n";
    for (std::size_t i = 0; i < v.branches.size(); ++i) {
      out << "  branch " << v.branches[i] << " multiplicity " << v.multiplicities[i] << "\n";
    }
  }
  if (!v.certificate.empty()) {
    out << "certificate at degree " << v.certificateDegree << ":";
    for (const auto& m : v.certificate) out << " " << m;
    out << "\n";
  }
  j["verdict"] = toJson(v);

  // A visibly pre-SNC principal input also gets the raw factorization run.
  if (gens.size() == 1) {
    const VarContext ctx = problem.ctx;
    VarContext local = ctx;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx.isParameter(i)) local = local.withKind(i, VarKind::Free);
    }
    VarMask all = ctx.size() == 64 ? ~VarMask{0} : (bit(ctx.size()) - 1);
    Poly h = translate(gens[0], point);
    auto d = h.order(all);
    if (d && *d > 0) {
      Poly low = h.homogeneousPart(all, *d);
      if (low.size() == 1) {
        Poly scaled = h.scaled(1 / low.terms().begin()->second);
        PreSNC f = PreSNC::fromSeries(local, TruncatedSeries(scaled, all, opts.truncation));
        FactorizationResult fr = sncFactorize(f, opts.truncation);
        Json fj;
        fj["success"] = fr.success;
        fj["steps"] = fr.steps.size();
        if (fr.success) {
          Json factors = Json::array();
          for (const auto& fac : fr.factors) {
            Json x;
            x["var"] = local.name(fac.var);
            x["multiplicity"] = fac.multiplicity;
            x["g"] = toString(fac.g.body(), local);
            factors.push_back(std::move(x));
          }
          fj["factors"] = std::move(factors);
          out << "factorization: " << fr.steps.size() << " substitutions\n";
          for (const auto& fac : fr.factors) {
            std::string g = toString(fac.g.body(), local);
            std::string joined = g == "0" ? "" : g[0] == '-' ? " - " + g.substr(1) : " + " + g;
            out << "  (" << local.name(fac.var) << joined << ")^" << fac.multiplicity << "\n";
          }
        } else {
          fj["failureDegree"] = fr.failureDegree;
          std::vector<std::string> cert;
          for (const auto& m : fr.certificate) cert.push_back(toString(m, local));
          fj["certificate"] = cert;
          out << "factorization fails at degree " << fr.failureDegree << ", certificate {";
          for (std::size_t i = 0; i < cert.size(); ++i) out << (i ? ", " : "") << cert[i];
          out << "}\n";
        }
        j["factorization"] = std::move(fj);
      }
    }
  }
  rep.text = out.str();
  rep.exitCode = v.status == NCStatus::Unsupported ? kExitUnsupported : kExitOk;
  return rep;
}

// The largest set of non-parameter variables, at least two, in which the
// form is homogeneous; ties go to the earliest variables. All of them when
// nothing smaller works out, so the splitting module reports the failure.
std::vector<std::size_t> formVariables(const Poly& form, const VarContext& ctx) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (!ctx.isParameter(i) && contains(form.support(), i)) pool.push_back(i);
  }
  auto homogeneousIn = [&](VarMask mask) {
    auto d = form.order(mask);
    return d && *d > 0 && form.homogeneousPart(mask, *d) == form;
  };
  if (pool.size() <= 12) {
    for (std::size_t size = pool.size(); size >= 2; --size) {
      // Subsets of this size in lexicographic order of positions.
      std::vector<bool> pick(pool.size(), false);
      std::fill(pick.begin(), pick.begin() + size, true);
      do {
        VarMask mask = 0;
        std::vector<std::size_t> chosen;
        for (std::size_t k = 0; k < pool.size(); ++k) {
          if (pick[k]) {
            mask |= bit(pool[k]);
            chosen.push_back(pool[k]);
          }
        }
        if (homogeneousIn(mask)) return chosen;
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  }
  return pool;
}

Report splitReport(const Problem& problem, const std::vector<Rational>& point, bool pointGiven, Json& j) {
  requirePrincipal(Mode::Split, problem);
  Poly form = problem.generators()[0];
  std::vector<std::size_t> vars = formVariables(form, problem.ctx);
  // Whatever else the form involves is read as a parameter.
  VarContext ctx = problem.ctx;
  VarMask support = form.support();
  std::vector<std::string> params;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (std::find(vars.begin(), vars.end(), i) != vars.end()) continue;
    if (!ctx.isParameter(i)) ctx = ctx.withKind(i, VarKind::Parameter);
    if (contains(support, i)) params.push_back(ctx.name(i));
  }
  std::vector<std::string> names;
  for (auto v : vars) names.push_back(ctx.name(v));
  j["formVariables"] = names;
  j["parameters"] = params;
  SplittingForm f = makeSplittingForm(ctx, form, vars);
  ParameterPoint pp;
  if (pointGiven) {
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx.isParameter(i)) pp[i] = point[i];
    }
  }
  SplittingFieldInfo info = splittingFieldDegree(f, pp);
  std::ostringstream out;
  out << "degree " << info.degree << ", " << (info.cyclic ? "cyclic" : "not cyclic");
  j["degree"] = info.degree;
  j["cyclic"] = info.cyclic;
  j["shape"] = info.shape;
  j["quadraticClasses"] = info.quadraticClasses;
  if (auto n = recognizeCyclic(f)) j["cyclicForm"] = *n;
  try {
    Poly locus = ramificationLocus(f);
    std::string text = locus.isConstant() ? "empty" : toString(locus, ctx);
    out << ", ramification locus " << text;
    j["ramificationLocus"] = text;
  } catch (const UnsupportedError& e) {
    out << ", ramification locus unsupported";
    j["ramificationLocus"] = nullptr;
  }
  out << "\nshape " << info.shape << "\nform in";
  for (const auto& v : names) out << " " << v;
  if (!params.empty()) {
    out << ", parameters";
    for (const auto& v : params) out << " " << v;
  }
  out << "\n";
  if (pointGiven) {
    bool indep = independentFactorsAt(f, pp);
    out << "independent factors at the point: " << (indep ? "yes" : "no") << "\n";
    j["independentFactors"] = indep;
  }
  Report rep;
  rep.text = out.str();
  return rep;
}

Report resolveReport(const Problem& problem, Json& j) {
  ResolutionTrace t = runResolveExceptNC(problem);
  std::ostringstream out;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    out << "step " << i + 1 << " (stage " << s.stage << "): chart " << s.chart << " at " << s.locus.label << ", inv " << toString(s.invariant)
        << " (normalized " << toString(normalizeInvariant(s.invariant)) << "), center "
        << toString(s.center, s.centerCtx) << ", w=" << s.weights.w.get_str() << ", " << toString(s.kind)
        << " transform";
    const auto& last = s.ledger.back();
    out << ", " << last.var << "^";
    for (std::size_t k = 0; k < last.removed.size(); ++k) out << (k ? "," : "") << last.removed[k];
    out << " removed\n";
    for (const auto& g : s.idealAfter) out << "    " << g << "\n";
  }
  out << "outcome: " << toString(t.outcome) << " after " << t.steps.size() << " step"
      << (t.steps.size() == 1 ? "" : "s") << "\n";
  if (t.outcome == Outcome::Unsupported) out << "  " << t.unsupportedReason << "\n";
  std::size_t nc = 0;
  for (const auto& v : t.finalVerdicts) nc += v.verdict.status == NCStatus::NC;
  out << "final chart " << t.chart << ": " << nc << " of " << t.finalVerdicts.size() << " sampled loci NC\n";
  out << "note: " << t.caveat << "\n";
  j["resolution"] = toJson(t);
  Report rep;
  rep.text = out.str();
  rep.exitCode = t.outcome == Outcome::Unsupported ? kExitUnsupported : kExitOk;
  return rep;
}

}  // namespace

Report runMode(Mode mode, const Problem& problem, const std::vector<Rational>& pointIn) {
  const bool pointGiven = !pointIn.empty();
  std::vector<Rational> point = pointGiven ? pointIn : std::vector<Rational>(problem.ctx.size(), 0);
  if (point.size() != problem.ctx.size()) throw Error("point has the wrong number of coordinates");
  Json j;
  j["mode"] = std::string(toString(mode));
  j["problem"] = problemJson(problem);
  j["point"] = rationalList(point);
  Report rep;
  switch (mode) {
    case Mode::Invariant:
    case Mode::Center:
    case Mode::Blowup:
      rep = invariantReport(mode, problem, point, j);
      break;
    case Mode::NCFactor:
      rep = ncfactorReport(problem, point, j);
      break;
    case Mode::Split:
      rep = splitReport(problem, point, pointGiven, j);
      break;
    case Mode::Resolve:
      rep = resolveReport(problem, j);
      break;
  }
  rep.trace = std::move(j);
  return rep;
}

}  // namespace ncres
