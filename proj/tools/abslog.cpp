#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "abslog/builtins.hpp"
#include "abslog/cartesian.hpp"
#include "abslog/error.hpp"
#include "abslog/logicgen.hpp"
#include "abslog/octagon.hpp"
#include "abslog/proofengine.hpp"
#include "abslog/specfile.hpp"

namespace {

using namespace abslog;

enum Exit { ok = 0, parse_error = 1, invalid = 2, not_derivable = 3, unknown_symbol = 4, too_large = 5, failed = 6 };

std::shared_ptr<const Abstraction> load(const std::string& path) {
  constexpr std::string_view prefix = "builtin:";
  if (path.rfind(prefix, 0) == 0) return builtin(path.substr(prefix.size()));
  return std::make_shared<const Abstraction>(load_spec(path));
}

std::string names(const FiniteLattice& lat, const std::vector<Element>& es) {
  std::string out;
  for (Element e : es) out += (out.empty() ? "" : ", ") + lat.name(e);
  return out;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write '" + out_path + "'");
  out << text;
}

int cmd_analyze(const std::string& path) {
  auto abs = load(path);
  const auto& lat = abs->lattice();
  std::cout << "abstraction: " << abs->name() << " (" << lat.size() << " elements, " << abs->universe().size()
            << " points)\n";
  std::cout << "distributive: " << (lat.is_distributive() ? "yes" : "no") << '\n';
  auto rep = preservation_report(*abs);
  std::cout << "preserved:";
  for (Connective c : kAllConnectives)
    if (rep.preserved(c)) std::cout << ' ' << connective_name(c);
  std::cout << '\n';
  for (Connective c : kAllConnectives) {
    const auto& e = rep[c];
    std::cout << "  " << connective_name(c) << ": ";
    switch (e.status) {
      case PreservationEntry::Status::preserved: std::cout << "yes\n"; break;
      case PreservationEntry::Status::unavailable: std::cout << "unavailable (no abstract table)\n"; break;
      case PreservationEntry::Status::not_preserved:
        std::cout << "NO (witness " << (e.witness.empty() ? std::string("-") : names(lat, e.witness)) << ")\n";
        break;
    }
  }
  auto emb = check_order_embedding(*abs);
  std::cout << "order-embedding: ";
  if (emb.holds) {
    std::cout << "yes\n";
  } else {
    auto [a, b] = *emb.witness;
    std::cout << "no (witness " << lat.name(a) << ", " << lat.name(b) << ": gamma(" << lat.name(a)
              << ") within gamma(" << lat.name(b) << ") but " << lat.name(a) << " is not below " << lat.name(b)
              << ")\n";
  }
  auto adj = compute_left_adjoint(abs);
  std::cout << "left adjoint: ";
  switch (adj.status) {
    case AdjointResult::Status::total: std::cout << "total\n"; break;
    case AdjointResult::Status::absent:
      std::cout << "absent (witness " << set_text(abs->universe(), *adj.witness) << ")\n";
      break;
    case AdjointResult::Status::undetermined: std::cout << "undetermined (closure system too large)\n"; break;
  }
  return ok;
}

ProofSystem build_system(const Abstraction& abs, bool minimize) {
  auto ps = generate_proof_system(abs, preservation_report(abs));
  return minimize ? minimize_proof_system(ps) : ps;
}

int cmd_generate(const std::string& path, bool minimize, const std::string& format, const std::string& out) {
  auto fmt = parse_render_format(format);
  auto abs = load(path);
  write_output(render(build_system(*abs, minimize), fmt), out);
  return ok;
}

int cmd_check(const std::string& path, const std::string& sequent) {
  auto abs = load(path);
  Sequent s = parse_sequent(sequent);
  ProofEngine engine(build_system(*abs, false));
  bool derivable = engine.derivable(s);
  bool valid = holds_concrete(*abs, s);
  std::cout << "sequent: " << to_text(s, abs->variables()) << '\n';
  std::cout << "derivable: " << (derivable ? "yes" : "no") << '\n';
  std::cout << "concretely-valid: " << (valid ? "yes" : "no") << '\n';
  return derivable ? ok : not_derivable;
}

int cmd_verify(const std::string& path, std::size_t depth, std::size_t samples, std::uint64_t seed,
               std::size_t bound) {
  auto abs = load(path);
  const auto& lat = abs->lattice();
  if (lat.size() > bound) throw CarrierTooLarge("verification carrier", lat.size(), bound);
  ProofEngine engine(build_system(*abs, false), EngineOptions{bound, true});
  bool all = true;

  auto sound = verify_soundness(*abs, engine, depth, samples, seed);
  all = all && sound.sound;
  std::cout << "soundness: " << (sound.sound ? "pass" : "FAIL") << " (" << sound.saturated_checked
            << " saturated checks, " << sound.derivations_replayed << " derivations replayed)\n";
  if (sound.counterexample) std::cout << "  counterexample: " << to_text(*sound.counterexample, abs->variables()) << '\n';

  auto lind = build_lindenbaum(engine, *abs);
  auto iso = verify_isomorphism(*abs, lind);
  all = all && iso.holds();
  std::cout << "isomorphism: " << (iso.holds() ? "pass" : "FAIL") << " (" << lind.classes.size() << " classes)\n";
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "  surjective: " << yn(iso.surjective) << "\n  injective: " << yn(iso.injective)
            << "\n  order-preserving: " << yn(iso.order_preserving) << "\n  order-reflecting: " << yn(iso.order_reflecting)
            << '\n';
  for (const auto& [c, okc] : iso.homomorphism) std::cout << "  homomorphism " << connective_name(c) << ": " << yn(okc) << '\n';
  for (const auto& f : iso.failures) std::cout << "  failure: " << f << '\n';

  auto comp = verify_completeness(*abs, engine);
  std::cout << "completeness: ";
  switch (comp.status) {
    case CompletenessResult::Status::complete: std::cout << "pass\n"; break;
    case CompletenessResult::Status::precondition_unmet: std::cout << "precondition unmet (gamma is not an order embedding)\n"; break;
    case CompletenessResult::Status::incomplete:
      all = false;
      std::cout << "FAIL (gamma(" << lat.name(comp.witness->first) << ") within gamma(" << lat.name(comp.witness->second)
                << ") but the sequent is not derivable)\n";
      break;
  }
  return all ? ok : failed;
}

int cmd_product(const std::vector<std::string>& paths, const std::string& out) {
  std::vector<std::shared_ptr<const Abstraction>> comps;
  for (const auto& p : paths) comps.push_back(load(p));
  auto pa = cartesian::product(comps);
  write_output(write_spec(*pa.abstraction), out);
  return ok;
}

int cmd_octagon_verify(int C, int N) {
  bool all = true;
  for (const auto& item : octagon::verify_suite(C, N)) {
    all = all && (item.pass || item.informational);
    std::cout << (item.informational ? "info" : item.pass ? "pass" : "FAIL") << "  " << item.name;
    if (!item.detail.empty()) std::cout << " (" << item.detail << ')';
    std::cout << '\n';
  }
  return all ? ok : failed;
}

int cmd_octagon_check(int C, int N, const std::string& sequent) {
  auto abs = octagon::export_abstraction(octagon::OctLattice(C), N);
  Sequent s = parse_sequent(sequent);
  ProofEngine engine(build_system(abs, false));
  bool derivable = engine.derivable(s);
  bool valid = holds_concrete(abs, s);
  std::cout << "sequent: " << to_text(s, abs.variables()) << '\n';
  std::cout << "derivable: " << (derivable ? "yes" : "no") << '\n';
  std::cout << "concretely-valid: " << (valid ? "yes" : "no") << '\n';
  return derivable ? ok : not_derivable;
}

int run(int argc, char** argv) {
  CLI::App app{"Generate and check the internal logic of finite abstractions"};
  app.require_subcommand(1);

  std::string spec, format = "text", out, sequent;
  bool minimize = false;
  std::size_t depth = 6, samples = 500, bound = 14;
  std::uint64_t seed = 1;
  std::vector<std::string> specs;
  int window = 2, grid_n = 8;

  auto* analyze = app.add_subcommand("analyze", "Preservation report, order embedding and left adjoint");
  analyze->add_option("spec", spec, "Spec file or builtin:<name>")->required();

  auto* generate = app.add_subcommand("generate", "Emit the generated proof system");
  generate->add_option("spec", spec, "Spec file or builtin:<name>")->required();
  generate->add_flag("--minimize", minimize, "Drop redundant axioms");
  generate->add_option("--format", format, "text, latex or machine");
  generate->add_option("-o,--out", out, "Output file (default stdout)");

  auto* check = app.add_subcommand("check", "Decide a sequent syntactically and concretely");
  check->add_option("spec", spec, "Spec file or builtin:<name>")->required();
  check->add_option("sequent", sequent, "e.g. \"Even(x) |- ~Odd(x)\"")->required();

  auto* verify = app.add_subcommand("verify", "Soundness, Lindenbaum isomorphism and completeness");
  verify->add_option("spec", spec, "Spec file or builtin:<name>")->required();
  verify->add_option("--depth", depth, "Depth bound of replayed derivations");
  verify->add_option("--samples", samples, "Number of replayed derivations");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--bound", bound, "Saturation bound on the carrier size");

  auto* product = app.add_subcommand("product", "Cartesian product of integer-universe abstractions");
  product->add_option("specs", specs, "Component specs")->required()->expected(1, -1);
  product->add_option("-o,--out", out, "Output file (default stdout)");

  auto* oct = app.add_subcommand("octagon", "Octagon predicates over a constant window");
  oct->add_option("--window", window, "Constant window C (thresholds in [-C+1, C])");
  oct->add_option("--grid", grid_n, "Grid half-width N (N >= 4C)");
  oct->require_subcommand(1);
  auto* oct_verify = oct->add_subcommand("verify", "Check the octagon claims");
  auto* oct_export = oct->add_subcommand("export", "Write the grid export as a spec file");
  oct_export->add_option("path", out, "Output file (- for stdout)")->required();
  auto* oct_check = oct->add_subcommand("check", "Decide a sequent over the export");
  oct_check->add_option("sequent", sequent)->required();

  auto* builtin_cmd = app.add_subcommand("builtin", "List built-in abstractions or print one");
  std::string builtin_name;
  builtin_cmd->add_option("name", builtin_name, "Built-in name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return parse_error;
  }

  try {
    if (*analyze) return cmd_analyze(spec);
    if (*generate) return cmd_generate(spec, minimize, format, out);
    if (*check) return cmd_check(spec, sequent);
    if (*verify) return cmd_verify(spec, depth, samples, seed, bound);
    if (*product) return cmd_product(specs, out);
    if (*oct_verify) return cmd_octagon_verify(window, grid_n);
    if (*oct_export) {
      write_output(write_spec(octagon::export_abstraction(octagon::OctLattice(window), grid_n)), out);
      return ok;
    }
    if (*oct_check) return cmd_octagon_check(window, grid_n, sequent);
    if (*builtin_cmd) {
      if (builtin_name.empty()) {
        for (const auto& n : builtin_names()) std::cout << n << '\n';
      } else {
        std::cout << builtin_spec(builtin_name);
      }
      return ok;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return parse_error;
  } catch (const UnknownFormat& e) {
    std::cerr << "error: " << e.what() << '\n';
    return parse_error;
  } catch (const UnknownSymbol& e) {
    std::cerr << "unknown symbol: " << e.what() << '\n';
    return unknown_symbol;
  } catch (const CarrierTooLarge& e) {
    std::cerr << "carrier too large: " << e.what() << '\n';
    return too_large;
  } catch (const Error& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return invalid;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
