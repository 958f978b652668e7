// ncres: command line front end. Exit codes: 0 verdict produced, 2 unsupported
// input, 3 parse error, 4 internal assertion failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ncres/driver.hpp"
#include "ncres/errors.hpp"

namespace {

void writeTrace(const std::string& path, const ncres::Json& trace) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw ncres::ParseError("cannot write '" + path + "'", 0, 0);
  out << trace.dump(2) << "\n";
}

ncres::Json errorTrace(const std::string& mode, const std::string& kind, const std::string& message) {
  ncres::Json j;
  j["mode"] = mode;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncres: principalization away from the normal-crossings locus"};
  app.set_help_all_flag("--help-all");
  std::string modeText, input, emitJson;
  std::vector<std::string> points;
  std::optional<unsigned> truncation, maxSteps;
  bool strict = false, controlled = false;
  app.add_option("mode", modeText, "invariant | center | blowup | ncfactor | split | resolve")
      ->required()
      ->check(CLI::IsMember({"invariant", "center", "blowup", "ncfactor", "split", "resolve"}));
  app.add_option("--input", input, "problem file")->required();
  app.add_option("--point", points, "evaluation or sample point, e.g. x=0,y=0,z=1 (repeatable)");
  app.add_option("--truncation", truncation, "series truncation degree")->check(CLI::PositiveNumber);
  app.add_option("--max-steps", maxSteps, "blow-up step limit for resolve");
  app.add_option("--emit-json", emitJson, "write the machine trace here");
  auto* strictFlag = app.add_flag("--strict", strict, "strict transform (embedded mode)");
  app.add_flag("--controlled", controlled, "controlled transform (default)")->excludes(strictFlag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : ncres::kExitInput;
  }

  try {
    ncres::Problem problem = ncres::loadProblem(input);
    if (truncation) problem.config.truncation = *truncation;
    if (maxSteps) problem.config.maxSteps = *maxSteps;
    if (strict) problem.config.transform = ncres::TransformKind::Strict;
    if (controlled) problem.config.transform = ncres::TransformKind::Controlled;
    ncres::Mode mode = *ncres::parseMode(modeText);

    std::vector<ncres::Rational> point;
    if (mode == ncres::Mode::Resolve) {
      for (std::size_t i = 0; i < points.size(); ++i) {
        problem.samplePoints.push_back({"cli" + std::to_string(i + 1), ncres::parsePointSpec(points[i], problem.ctx)});
      }
    } else if (points.size() > 1) {
      throw ncres::ParseError("mode " + modeText + " takes at most one --point", 0, 0);
    } else if (points.size() == 1) {
      point = ncres::parsePointSpec(points[0], problem.ctx);
    }

    ncres::Report report = ncres::runMode(mode, problem, point);
    std::cout << report.text;
    writeTrace(emitJson, report.trace);
    return report.exitCode;
  } catch (const ncres::ParseError& e) {
    std::cerr << "parse error";
    if (e.line() > 0) std::cerr << " at line " << e.line();
    std::cerr << ": " << e.what() << "\n";
    if (e.line() == 0) std::cerr << app.help();
    writeTrace(emitJson, errorTrace(modeText, "parse", e.what()));
    return ncres::kExitInput;
  } catch (const ncres::InternalError& e) {
    std::cerr << "internal assertion failed: " << e.what() << "\n";
    writeTrace(emitJson, errorTrace(modeText, "internal", e.what()));
    return ncres::kExitInternal;
  } catch (const ncres::Error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    writeTrace(emitJson, errorTrace(modeText, "unsupported", e.what()));
    return ncres::kExitUnsupported;
  }
}
