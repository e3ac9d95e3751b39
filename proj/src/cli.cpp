#include "morse/cli.hpp"

#include <CLI11.hpp>
#include <fstream>

#include "morse/detect.hpp"
#include "morse/render.hpp"
#include "morse/splice.hpp"

namespace morse {

namespace {

void report_shape(std::ostream& out, const MorseDiagram& d) {
  const SurfaceType st = surface_type(d.initial);
  out << "handles: " << st.handle_count << '\n'
      << "boundary: " << st.boundary_count << '\n'
      << "genus: " << st.genus << '\n'
      << "events: " << d.events.size() << '\n'
      << "closed: " << (run_diagram(d).closed ? "true" : "false") << '\n';
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw MorseError(ErrorCode::ParseError, "cannot write " + path);
  file << text;
}

std::string join_indices(const std::vector<std::size_t>& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

const char* sign_str(Sign s) { return s == Sign::Plus ? "+" : "-"; }

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return kExitParse;
    case ErrorCode::NotTorusPage: return kExitNotApplicable;
    default: return kExitInvalid;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial Morse structures on open books", "morse"};
  app.require_subcommand(1, 1);

  std::string file1, file2, out_path, points1, points2, p1, p2, word;
  std::string sign = "neg", mode = "conjugacy", format = "ascii";
  std::size_t depth = 0;

  auto* info = app.add_subcommand("info", "Surface type and closedness of a diagram");
  info->add_option("file", file1)->required();

  auto* splice_cmd = app.add_subcommand("splice", "Murasugi-sum splice of two diagrams");
  splice_cmd->add_option("file1", file1)->required();
  splice_cmd->add_option("file2", file2)->required();
  splice_cmd->add_option("--points1", points1, "c:g.s,... in starlike order")->required();
  splice_cmd->add_option("--points2", points2, "c:g.s,... in starlike order")->required();
  splice_cmd->add_option("--out", out_path)->required();

  auto* stab = app.add_subcommand("stabilize", "Splice with a Hopf band");
  stab->add_option("file", file1)->required();
  stab->add_option("--sign", sign)->check(CLI::IsMember({"pos", "neg"}));
  stab->add_option("--p1", p1)->required();
  stab->add_option("--p2", p2)->required();
  stab->add_option("--out", out_path)->required();

  auto* detect = app.add_subcommand("detect-ot", "Search for a left-veering handle");
  detect->add_option("file", file1)->required();
  detect->add_option("--search-depth", depth);

  auto* mono = app.add_subcommand("monodromy", "Monodromy of a one-holed-torus diagram");
  mono->add_option("file", file1)->required();

  auto* equiv = app.add_subcommand("equiv", "Compare the open books of two torus diagrams");
  equiv->add_option("file1", file1)->required();
  equiv->add_option("file2", file2)->required();
  equiv->add_option("--mode", mode)->check(CLI::IsMember({"strict", "conjugacy"}));

  auto* synth = app.add_subcommand("synth", "Torus diagram realizing a twist word");
  synth->add_option("--word", word)->required();
  synth->add_option("--out", out_path)->required();

  auto* rend = app.add_subcommand("render", "Draw a diagram");
  rend->add_option("file", file1)->required();
  rend->add_option("--format", format)->check(CLI::IsMember({"ascii", "svg"}));
  rend->add_option("--out", out_path)->default_val("-");

  std::vector<const char*> argv{"morse"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (info->parsed()) {
      const MorseDiagram d = load_diagram(file1);
      report_shape(out, d);
      out << "configuration: " << d.initial.str() << '\n';
    } else if (splice_cmd->parsed()) {
      const MorseDiagram d = splice(load_diagram(file1), StarSet{parse_marked_points(points1)},
                                    load_diagram(file2), StarSet{parse_marked_points(points2)});
      save_diagram(d, out_path);
      report_shape(out, d);
      out << "out: " << out_path << '\n';
    } else if (stab->parsed()) {
      const MorseDiagram d = stabilize(load_diagram(file1), sign == "pos" ? HopfSign::Positive : HopfSign::Negative,
                                       parse_marked_point(p1), parse_marked_point(p2));
      save_diagram(d, out_path);
      report_shape(out, d);
      out << "out: " << out_path << '\n';
    } else if (detect->parsed()) {
      const OtVerdict v = ot_verdict(load_diagram(file1), depth);
      if (v.verdict == Verdict::Unknown) {
        out << "verdict: unknown\n";
      } else {
        const auto& w = v.certificate->witness;
        std::string moves;
        for (const auto& m : v.certificate->moves) moves += (moves.empty() ? "" : " ") + m.str();
        out << "verdict: overtwisted-certified\n"
            << "handle: " << w.handle << '\n'
            << "vertical-end: " << w.handle << sign_str(w.vertical_end) << '\n'
            << "moving-end: " << w.handle << sign_str(w.moving_end) << '\n'
            << "witness-events: " << join_indices(w.event_indices) << '\n'
            << "move-path: " << (moves.empty() ? "none" : moves) << '\n';
      }
    } else if (mono->parsed()) {
      const DiagramMonodromy m = diagram_monodromy(load_diagram(file1));
      const Mat2& x = m.invariant.matrix;
      out << "matrix-row-1: " << x.a << ' ' << x.b << '\n'
          << "matrix-row-2: " << x.c << ' ' << x.d << '\n'
          << "exponent: " << m.invariant.exponent_sum << '\n'
          << "factorization: " << m.factorization.str() << '\n'
          << "boundary-twists: " << m.boundary_twists << '\n';
    } else if (equiv->parsed()) {
      const bool same = same_open_book(load_diagram(file1), load_diagram(file2),
                                       mode == "strict" ? EquivalenceMode::Strict : EquivalenceMode::Conjugacy);
      out << "mode: " << mode << '\n' << "equivalent: " << (same ? "true" : "false") << '\n';
    } else if (synth->parsed()) {
      const TwistWord w = parse_twist_word(word);
      const MorseDiagram d = synthesize(w);
      save_diagram(d, out_path);
      out << "word: " << w.str() << '\n' << "events: " << d.events.size() << '\n' << "out: " << out_path << '\n';
    } else if (rend->parsed()) {
      const auto fmt = format == "svg" ? RenderFormat::Svg : RenderFormat::Ascii;
      write_text(out_path, render(load_diagram(file1), fmt), out);
    }
  } catch (const MorseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitOk;
}

}  // namespace morse
