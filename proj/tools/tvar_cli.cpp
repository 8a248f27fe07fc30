#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>

#include "tvar/io.hpp"
#include "tvar/tvar.hpp"

namespace fs = std::filesystem;
using namespace tvar;

namespace {

enum Exit : int { Ok = 0, ParseFailure = 2, BadInput = 3, HasUnknown = 4 };

struct Outcome {
  Json doc;
  int code = Ok;
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

Json error_doc(const Error& e) { return Json{{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}}; }

Outcome finish(Json doc) {
  const int code = mentions_unknown(doc) ? HasUnknown : Ok;
  return {std::move(doc), code};
}

// Runs `body` on a validated divisor and maps library errors onto exit codes.
// With `needs_proper`, a non-proper divisor stops before `body`.
template <class Body>
Outcome run(const std::string& text, bool needs_proper, Body body) {
  try {
    PolyhedralDivisor d = to_divisor(parse_input(text));
    if (auto v = validate_input(d); !v.empty()) return {Json{{"violations", to_json(v)}}, BadInput};
    if (needs_proper) {
      auto p = is_proper(d);
      if (p.status == ProperStatus::NotProper) return {Json{{"proper", to_json(p)}}, BadInput};
    }
    return body(d);
  } catch (const Error& e) {
    return {error_doc(e), e.kind() == ErrorKind::Parse ? ParseFailure : BadInput};
  }
}

Outcome classify_text(const std::string& text, bool isolated) {
  return run(text, false, [&](const PolyhedralDivisor& d) {
    auto r = classify_report(d, isolated);
    Json doc = to_json(r);
    if (!r.violations.empty() || r.proper->status == ProperStatus::NotProper) return Outcome{doc, BadInput};
    return finish(std::move(doc));
  });
}

// Batch precedence: a parse failure outranks bad input, which outranks unknown.
int combine(int a, int b) {
  auto rank = [](int c) { return c == ParseFailure ? 3 : c == BadInput ? 2 : c == HasUnknown ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

Outcome classify_batch(const std::string& dir, bool isolated) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  if (ec) return {error_doc(Error(ErrorKind::Parse, "cannot read directory " + dir)), ParseFailure};
  std::sort(files.begin(), files.end());

  std::vector<std::future<Outcome>> jobs;
  for (const auto& f : files)
    jobs.push_back(std::async(std::launch::async, [f, isolated] {
      try {
        return classify_text(read_input(f.string()), isolated);
      } catch (const Error& e) {
        return Outcome{error_doc(e), ParseFailure};
      }
    }));

  Json results = Json::array();
  int code = Ok;
  for (std::size_t i = 0; i < files.size(); ++i) {
    Outcome o = jobs[i].get();
    code = combine(code, o.code);
    results.push_back({{"file", files[i].filename().string()}, {"exit_code", o.code}, {"report", o.doc}});
  }
  return {Json{{"results", results}}, code};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Singularity classification for complexity-one T-varieties"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));

  std::string input;
  auto add_input = [&](CLI::App* sub) { return sub->add_option("input", input, "problem file, or - for stdin"); };

  bool isolated = false;
  std::string batch_dir;
  auto* classify = app.add_subcommand("classify", "full classification report");
  auto* classify_in = add_input(classify);
  classify->add_flag("--isolated", isolated, "the singularities are known to be isolated");
  auto* batch = classify->add_option("--batch", batch_dir, "classify every .json file in a directory")
                    ->check(CLI::ExistingDirectory);
  classify_in->excludes(batch);

  auto* proper = app.add_subcommand("proper", "properness check");
  add_input(proper)->required();
  auto* rational = app.add_subcommand("rational", "rational singularities");
  add_input(rational)->required();
  auto* cm = app.add_subcommand("cm", "Cohen-Macaulay property");
  add_input(cm)->required();
  cm->add_flag("--isolated", isolated, "the singularities are known to be isolated");
  auto* gor = app.add_subcommand("gorenstein", "Gorenstein property");
  add_input(gor)->required();
  auto* ell = app.add_subcommand("elliptic", "elliptic singularity test");
  add_input(ell)->required();

  long long m_max = -1;
  auto* h1 = app.add_subcommand("h1", "graded pieces of the first cohomology");
  add_input(h1)->required();
  h1->add_option("--m-max", m_max, "last degree to report")->check(CLI::NonNegativeNumber);
  auto* profile = app.add_subcommand("profile", "floor-degree profile");
  add_input(profile)->required();
  profile->add_option("--m-max", m_max, "last degree to report")->required()->check(CLI::NonNegativeNumber);

  auto* toric = app.add_subcommand("toric", "toric cone of a divisor on affine space");
  add_input(toric)->required();

  long long max_degree = 0;
  auto* ring = app.add_subcommand("ring", "section ring: Hilbert series, generators, relations");
  add_input(ring)->required();
  ring->add_option("--max-degree", max_degree, "highest degree to compute")->required()->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Ok : ParseFailure;
  }

  Outcome out;
  if (classify->parsed() && !batch_dir.empty()) {
    out = classify_batch(batch_dir, isolated);
  } else {
    if (input.empty()) {
      std::cerr << "an input file (or -) is required\n";
      return ParseFailure;
    }
    std::string text;
    try {
      text = read_input(input);
    } catch (const Error& e) {
      std::cout << emit_report(error_doc(e), format == "text" ? Format::Text : Format::Json);
      return ParseFailure;
    }
    if (classify->parsed()) {
      out = classify_text(text, isolated);
    } else if (proper->parsed()) {
      out = run(text, false, [](const PolyhedralDivisor& d) {
        auto p = is_proper(d);
        Json doc{{"proper", to_json(p)}};
        return p.status == ProperStatus::NotProper ? Outcome{doc, BadInput} : finish(std::move(doc));
      });
    } else if (rational->parsed()) {
      out = run(text, true, [](const PolyhedralDivisor& d) {
        return finish(Json{{"rational", to_json(rational_singularities(d))}});
      });
    } else if (cm->parsed()) {
      out = run(text, true, [&](const PolyhedralDivisor& d) {
        return finish(Json{{"cohen_macaulay", to_json(cohen_macaulay(d, isolated))}});
      });
    } else if (gor->parsed()) {
      out = run(text, true,
                [](const PolyhedralDivisor& d) { return finish(Json{{"gorenstein", to_json(gorenstein(d))}}); });
    } else if (ell->parsed()) {
      out = run(text, true, [](const PolyhedralDivisor& d) {
        return finish(Json{{"elliptic", to_json(elliptic_singularity(d))}});
      });
    } else if (h1->parsed()) {
      out = run(text, true, [&](const PolyhedralDivisor& d) {
        std::optional<Int> limit;
        if (m_max >= 0) limit = Int(m_max);
        return finish(Json{{"h1", to_json(h1_report(d, limit))}});
      });
    } else if (profile->parsed()) {
      out = run(text, true, [&](const PolyhedralDivisor& d) {
        return finish(Json{{"profile", to_json(floor_degree_profile(d, static_cast<std::size_t>(m_max)))}});
      });
    } else if (toric->parsed()) {
      out = run(text, false,
                [](const PolyhedralDivisor& d) { return finish(Json{{"toric", toric_json(toric_cone(d))}}); });
    } else if (ring->parsed()) {
      out = run(text, true,
                [&](const PolyhedralDivisor& d) { return finish(Json{{"ring", ring_json(d, Int(max_degree))}}); });
    }
  }
  std::cout << emit_report(out.doc, format == "text" ? Format::Text : Format::Json);
  return out.code;
}
