#pragma once

// Problem files, the resolve-except-NC loop and the per-mode reports behind
// the ncres command line tool.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ncres/blowup.hpp"
#include "ncres/invariant.hpp"
#include "ncres/ncdetect.hpp"
#include "ncres/var_context.hpp"

namespace ncres {

using Json = nlohmann::ordered_json;

struct SamplePoint {
  std::string label;
  std::vector<Rational> coords;  // one value per variable, in declaration order
};

struct ProblemConfig {
  unsigned truncation = 16;
  unsigned maxSteps = 12;
  TransformKind transform = TransformKind::Controlled;
};

struct Problem {
  VarContext ctx;
  std::vector<std::string> ideal;     // expressions as written
  std::vector<std::string> divisor;   // divisorial variable names
  std::vector<SamplePoint> samplePoints;
  NCMode ncMode = NCMode::AnyCodim;
  ProblemConfig config;

  std::vector<Poly> generators() const;
};

/// Reads the problem format:
///
///   # comment
///   vars:
///     x: free
///     u: divisorial
///     t: parameter
///   ideal:
///     x^2 - y^2*z
///   divisor:
///     u
///   points:
///     witness = (0, 0, 1)
///   options:
///     truncation = 16
///     max-steps = 12
///     nc-mode = any-codim
///     transform = controlled
///
/// Section headers stand alone on their line. `divisor:` entries (comma or
/// line separated) turn declared variables divisorial. Throws ParseError
/// with the 1-based line number.
Problem parseProblem(std::string_view text);
Problem loadProblem(const std::string& path);

/// "x=0,y=0,z=1"; unnamed variables default to 0.
std::vector<Rational> parsePointSpec(std::string_view text, const VarContext& ctx);

/// One candidate locus and its NC verdict.
struct LocusVerdict {
  std::string label;
  std::vector<Rational> coords;
  NCVerdict verdict;
};

struct ExceptionalEntry {
  std::size_t step = 0;
  std::string var;
  std::vector<unsigned> removed;  // per generator
};

/// One blow-up. Blow-ups of one stage share the invariant (components of
/// the max locus taken one at a time); it drops strictly from stage to stage.
struct ResolutionStep {
  std::string chart;               // chart the step starts from
  std::size_t stage = 0;
  LocusVerdict locus;              // the lex-max non-NC candidate
  InvariantVector invariant;
  bool exact = true;
  WeightedCenter center;
  VarContext centerCtx;            // the center's variables live here
  BlowupWeights weights;
  TransformKind kind = TransformKind::Controlled;
  std::vector<LocusVerdict> verdicts;  // every candidate of the chart
  std::vector<ExceptionalEntry> ledger;
  std::vector<std::string> idealAfter;
};

enum class Outcome { TerminatedNC, StepLimit, Unsupported };
std::string_view toString(Outcome outcome);

struct ResolutionTrace {
  std::vector<ResolutionStep> steps;
  Outcome outcome = Outcome::TerminatedNC;
  std::string chart;                       // final chart id
  std::vector<std::string> finalIdeal;
  std::vector<LocusVerdict> finalVerdicts;
  std::optional<LocusVerdict> offending;   // outcome unsupported: the sub-verdict
  std::string unsupportedReason;
  std::string caveat;
};

/// Principalization away from the NC locus. Candidate loci per chart are the
/// chart origin, the points with every coordinate 0 or 1 and the user sample
/// points carried through the blow-ups. `config.maxSteps` bounds the number
/// of blow-ups. Throws InternalError when the invariant increases, fails to
/// drop over a center, or a center meets an NC-certified sample point.
ResolutionTrace runResolveExceptNC(const Problem& problem);

Json toJson(const ResolutionTrace& trace);

enum class Mode { Invariant, Center, Blowup, NCFactor, Split, Resolve };
std::optional<Mode> parseMode(std::string_view text);
std::string_view toString(Mode mode);

struct Report {
  std::string text;  // human-readable
  Json trace;
  int exitCode = 0;
};

/// Exit codes of the tool.
constexpr int kExitOk = 0;
constexpr int kExitUnsupported = 2;
constexpr int kExitInput = 3;
constexpr int kExitInternal = 4;

/// Runs one mode. `point` is the evaluation point (origin if empty); for
/// split it fixes parameter values. Library errors propagate.
Report runMode(Mode mode, const Problem& problem, const std::vector<Rational>& point = {});

}  // namespace ncres
