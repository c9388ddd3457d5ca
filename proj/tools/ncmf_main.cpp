#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ncmf/commands.hpp"
#include "ncmf/corpus.hpp"

using namespace ncmf;

namespace {

void emit(const Report& r, bool json_only) {
  if (!json_only)
    for (const auto& l : r.lines) std::cout << l << "\n";
  std::cout << r.record.dump() << std::endl;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted matrix factorizations over noncommutative graded algebras"};
  std::string session_path, example_name;
  bool json_only = false;
  CommandRequest req;
  app.add_option("-s,--session", session_path, "session file");
  app.add_option("-e,--example", example_name, "bundled example used as the session");
  app.add_flag("--json", json_only, "print only the JSON record");
  app.add_flag("--timings", req.timings, "add elapsed time to the record");
  app.require_subcommand(1);

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("target", req.target, "declared name; optional when unique");
    return sub;
  };
  add("check-normal", "certify an element as normal and regular");
  add("normalizing-auto", "normalizing automorphism and its order");
  add("verify-tmf", "check both factorization identities");
  add("unroll", "unroll a factorization over B")->add_option("--steps", req.steps);
  auto* resolve = add("resolve", "minimal free resolution of a module");
  resolve->add_option("--hmax", req.hmax);
  resolve->add_option("--tmax", req.tmax);
  auto* betti = add("betti", "Betti table with the session bounds");
  betti->add_option("--hmax", req.hmax);
  betti->add_option("--tmax", req.tmax);
  add("detect-period", "smallest period of the unrolled resolution")->add_option("--pmax", req.pmax);
  add("extract-tmf", "factorization from a module of projective dimension one")->add_option("--tmax", req.tmax);
  auto* pipe = add("pipeline", "resolve and factor the first eligible syzygy");
  pipe->add_option("--dim", req.dim)->required();
  pipe->add_option("--tmax", req.tmax);
  CLI::App* zhang = app.add_subcommand("zhang", "Zhang twist by an automorphism");
  zhang->add_option("--auto", req.auto_name);
  zhang->add_option("--f", req.element);
  zhang->add_option("--transport", req.transport);
  zhang->add_option("--pmax", req.pmax);
  add("cone", "mapping cone of a morphism");
  add("homotopy", "null-homotopy of a morphism");
  add("verify", "run the session's verify directives");
  add("normalize", "print the normalized session");

  CLI::App* example = app.add_subcommand("example", "bundled examples");
  std::string example_action, example_arg;
  example->add_option("action", example_action, "list, show or run")->required();
  example->add_option("name", example_arg);

  CLI11_PARSE(app, argc, argv);

  CLI::App* chosen = app.get_subcommands().front();
  req.command = chosen->get_name();
  try {
    if (req.command == "example") {
      if (example_action == "list") {
        for (const auto& n : corpus_names()) std::cout << n << "\n";
        return 0;
      }
      if (example_arg.empty()) throw Error(ErrorKind::InvalidArgument, "example " + example_action + " needs a name");
      std::string text = corpus_text(example_arg);
      if (example_action == "show") {
        std::cout << text;
        return 0;
      }
      if (example_action != "run") throw Error(ErrorKind::InvalidArgument, "unknown example action " + example_action);
      Report r = run_verifications(parse_session(text));
      r.record["example"] = example_arg;
      emit(r, json_only);
      return r.exit_code;
    }
    if (session_path.empty() == example_name.empty())
      throw Error(ErrorKind::InvalidArgument, "give exactly one of --session and --example");
    Session s = parse_session(session_path.empty() ? corpus_text(example_name) : read_file(session_path));
    if (req.command == "normalize") {
      std::cout << serialize_session(s);
      return 0;
    }
    Report r = req.command == "verify" ? run_verifications(s) : run_command(s, req);
    emit(r, json_only);
    return r.exit_code;
  } catch (const Error& e) {
    Report r = error_report(req.command, e);
    emit(r, json_only);
    return r.exit_code;
  }
}
