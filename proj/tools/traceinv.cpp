// traceinv: exact calculator for trace-diagram invariants of tensor
// structures.  All arithmetic is rational; output is deterministic for a
// fixed input and seed.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "traceinv/evaluate.hpp"
#include "traceinv/hilbert.hpp"
#include "traceinv/io.hpp"
#include "traceinv/symfunc.hpp"
#include "traceinv/theory.hpp"
#include "traceinv/verify.hpp"

using namespace traceinv;

namespace {

Limits limits_from_env() {
  Limits limits = default_limits();
  if (const char* s = std::getenv("TRACEINV_ENUM_LIMIT")) limits.enumeration = std::strtoull(s, nullptr, 10);
  if (const char* s = std::getenv("TRACEINV_TENSOR_LIMIT")) limits.tensor_entries = std::strtoull(s, nullptr, 10);
  return limits;
}

Structure load_structure(const std::string& path, const Limits& limits) {
  std::ifstream is(path);
  if (!is) throw parse_error("cannot open structure file: " + path);
  return read_structure(is, limits);
}

Theory load_theory(const std::string& path, const std::string& builtin) {
  if (!builtin.empty()) {
    if (builtin == "assoc-unital") return associative_unital_theory();
    if (builtin == "commutative") return commutative_theory();
    throw parse_error("unknown builtin theory: " + builtin + " (try assoc-unital, commutative)");
  }
  if (path.empty()) throw parse_error("need --theory FILE or --builtin NAME");
  std::ifstream is(path);
  if (!is) throw parse_error("cannot open theory file: " + path);
  return read_theory(is);
}

std::string print_pair_term(const DiagramKey& left, const DiagramKey& right) {
  auto mono = [](const DiagramKey& k) {
    const std::string s = print_diagram_key(k);
    return s.empty() ? std::string("1") : s;
  };
  return mono(left) + " (x) " + mono(right);
}

void print_tensor_square(const TensorSquareSum& t) {
  if (t.terms().empty()) {
    std::cout << "0\n";
    return;
  }
  bool first = true;
  for (const auto& [key, coeff] : t.terms()) {
    Rat c = coeff;
    if (first) {
      if (c < 0) {
        std::cout << "-";
        c = -c;
      }
    } else {
      std::cout << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    if (c != 1) std::cout << rat_to_string(c) << "*";
    std::cout << print_pair_term(key.first, key.second);
  }
  std::cout << "\n";
}

std::string print_sym(const SymFunc& f) {
  if (f.terms().empty()) return "0";
  const char* tag = f.basis() == SymBasis::PowerSum ? "p" : "s";
  std::string out;
  bool first = true;
  for (const auto& [part, coeff] : f.terms()) {
    Rat c = coeff;
    if (first) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    if (c != 1) out += rat_to_string(c) + "*";
    out += tag;
    out += print_partition(part);
  }
  return out;
}

void print_checks(const std::vector<Check>& checks, int& exit_code) {
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS" : "FAIL") << " " << c.name << " (" << c.detail << ")\n";
    if (!c.pass) exit_code = 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact trace-diagram invariants of tensor structures"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string sig_text = "1 1";
  app.add_option("--sig", sig_text, "type signature: out/in arities, e.g. \"1 1\" or \"2 1 1 2\"");

  const Limits limits = limits_from_env();

  // ---- canon ----------------------------------------------------------
  auto* canon = app.add_subcommand("canon", "canonical form and automorphism count of a closed diagram");
  std::string canon_literal;
  canon->add_option("diagram", canon_literal, "diagram literal p(sigma; n1,...,nr; m)")->required();

  // ---- element arithmetic ---------------------------------------------
  auto* mul = app.add_subcommand("mul", "product of two elements");
  std::string mul_a, mul_b;
  mul->add_option("a", mul_a)->required();
  mul->add_option("b", mul_b)->required();

  auto* delta = app.add_subcommand("delta", "direct-sum coproduct of an element");
  std::string delta_a;
  delta->add_option("a", delta_a)->required();

  auto* delta_tensor = app.add_subcommand("delta-tensor", "tensor-product coproduct of an element");
  std::string delta_tensor_a;
  delta_tensor->add_option("a", delta_tensor_a)->required();

  auto* antipode_cmd = app.add_subcommand("antipode", "antipode of an element");
  std::string antipode_a;
  antipode_cmd->add_option("a", antipode_a)->required();

  auto* inner = app.add_subcommand("inner", "inner product of two elements");
  std::string inner_a, inner_b;
  inner->add_option("a", inner_a)->required();
  inner->add_option("b", inner_b)->required();

  // ---- hilbert ---------------------------------------------------------
  auto* hilbert = app.add_subcommand("hilbert", "graded dimension of the invariant ring");
  std::string hilbert_deg;
  int hilbert_dim = -1;
  std::string hilbert_method = "all";
  int hilbert_samples = 0;
  std::uint64_t hilbert_seed = 2024;
  hilbert->add_option("--deg", hilbert_deg, "multidegree, e.g. \"4\" or \"1,1\"")->required();
  hilbert->add_option("--dim", hilbert_dim, "restrict to structures of this dimension");
  hilbert->add_option("--method", hilbert_method, "burnside | formula | rank | all");
  hilbert->add_option("--samples", hilbert_samples, "random structures for the rank method");
  hilbert->add_option("--seed", hilbert_seed, "seed for the rank method");

  // ---- eval -------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "evaluate an element on a structure");
  std::string eval_structure, eval_elem;
  eval->add_option("--structure", eval_structure, "structure file")->required();
  eval->add_option("element", eval_elem)->required();

  // ---- rank -------------------------------------------------------------
  auto* rank = app.add_subcommand("rank", "evaluation rank of a graded piece on random structures");
  std::string rank_deg;
  int rank_dim = 0, rank_samples = 0;
  std::uint64_t rank_seed = 2024;
  rank->add_option("--deg", rank_deg)->required();
  rank->add_option("--dim", rank_dim)->required();
  rank->add_option("--samples", rank_samples, "defaults to basis size + 5");
  rank->add_option("--seed", rank_seed);

  // ---- id-gens -----------------------------------------------------------
  auto* idgens = app.add_subcommand("id-gens", "alternating-sum generators of the dimension kernel");
  std::string idgens_deg;
  int idgens_dim = 0;
  idgens->add_option("--deg", idgens_deg)->required();
  idgens->add_option("--dim", idgens_dim)->required();

  // ---- endo ---------------------------------------------------------------
  auto* endo = app.add_subcommand("endo", "single-endomorphism symmetric function tools");
  endo->require_subcommand(1);
  auto* schur_expand = endo->add_subcommand("schur-expand", "orthonormal basis element in power sums");
  std::string se_part;
  schur_expand->add_option("partition", se_part)->required();
  auto* jt = endo->add_subcommand("jacobi-trudi", "determinant expansion check");
  std::string jt_part;
  jt->add_option("partition", jt_part)->required();
  auto* in_ideal = endo->add_subcommand("in-ideal", "membership in the dimension kernel");
  std::string ii_part;
  int ii_dim = 0;
  in_ideal->add_option("partition", ii_part)->required();
  in_ideal->add_option("--dim", ii_dim)->required();
  auto* endo_product = endo->add_subcommand("product", "product of two basis elements");
  std::string ep_a, ep_b;
  endo_product->add_option("a", ep_a)->required();
  endo_product->add_option("b", ep_b)->required();

  // ---- axioms ---------------------------------------------------------------
  auto* axioms = app.add_subcommand("axioms", "theories, models and axiom ideals");
  axioms->require_subcommand(1);
  std::string th_file, th_builtin;
  axioms->add_option("--theory", th_file, "theory file");
  axioms->add_option("--builtin", th_builtin, "assoc-unital | commutative");
  auto* check_model = axioms->add_subcommand("check-model", "does a structure satisfy the theory?");
  std::string cm_structure;
  check_model->add_option("--structure", cm_structure)->required();
  auto* ax_pair = axioms->add_subcommand("pair", "close an axiom against a complement diagram");
  int ax_index = 0;
  std::string ax_complement;
  ax_pair->add_option("--axiom", ax_index, "axiom index within the theory (0-based)");
  ax_pair->add_option("complement", ax_complement, "open diagram literal c(j; sigma; tau; n1,...,nr; m)")->required();
  auto* ax_gens = axioms->add_subcommand("gens", "axiom-ideal generators up to a box bound");
  int ax_bound = 2;
  std::string ax_check_structure;
  ax_gens->add_option("--bound", ax_bound);
  ax_gens->add_option("--structure", ax_check_structure, "verify the generators vanish on this structure");

  // ---- verify -----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run a structural verification suite");
  std::string suite;
  int verify_max_n = 6;
  std::uint64_t verify_seed = 2024;
  verify->add_option("suite", suite, "psh | hilbert | quotient | endo | canon | axioms | kernel | sum-tensor | adjoint | all")
      ->required();
  verify->add_option("--max-n", verify_max_n);
  verify->add_option("--seed", verify_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int exit_code = 0;
  try {
    const TypeSignature sig = parse_signature(sig_text);

    if (*canon) {
      const ClosedDiagram d = parse_closed_literal(sig, canon_literal, limits);
      std::cout << print_closed_diagram(d) << "\n";
      std::cout << "aut " << d.aut_order() << "\n";
    } else if (*mul) {
      const DiagramSum a = parse_element_literal(sig, mul_a, limits);
      const DiagramSum b = parse_element_literal(sig, mul_b, limits);
      std::cout << print_element(multiply(a, b, limits)) << "\n";
    } else if (*delta) {
      print_tensor_square(coproduct_sum(parse_element_literal(sig, delta_a, limits), limits));
    } else if (*delta_tensor) {
      print_tensor_square(coproduct_tensor(parse_element_literal(sig, delta_tensor_a, limits)));
    } else if (*antipode_cmd) {
      std::cout << print_element(antipode(parse_element_literal(sig, antipode_a, limits), limits)) << "\n";
    } else if (*inner) {
      const DiagramSum a = parse_element_literal(sig, inner_a, limits);
      const DiagramSum b = parse_element_literal(sig, inner_b, limits);
      std::cout << rat_to_string(inner_product(a, b, limits)) << "\n";
    } else if (*hilbert) {
      const auto nd = parse_multidegree(hilbert_deg, sig.arity());
      const bool all = hilbert_method == "all";
      if (hilbert_method != "all" && hilbert_method != "burnside" && hilbert_method != "formula" &&
          hilbert_method != "rank")
        throw parse_error("unknown method: " + hilbert_method);
      if (all || hilbert_method == "burnside") {
        if (hilbert_dim < 0)
          std::cout << "burnside " << dim_burnside(sig, nd, limits) << "\n";
        else if (!all)
          throw parse_error("the burnside method does not take --dim");
      }
      if (all || hilbert_method == "formula") {
        if (hilbert_dim < 0)
          std::cout << "formula " << dim_formula(sig, nd) << "\n";
        else
          std::cout << "formula[rows<=" << hilbert_dim << "] " << quotient_dim(sig, nd, hilbert_dim) << "\n";
      }
      if ((all && hilbert_dim >= 0) || hilbert_method == "rank") {
        if (hilbert_dim < 0) throw parse_error("the rank method needs --dim");
        int samples = hilbert_samples;
        if (samples <= 0) samples = static_cast<int>(graded_basis(sig, nd, limits).size()) + 5;
        std::cout << "# seed: " << hilbert_seed << "\n";
        std::cout << "rank " << evaluation_rank(sig, nd, hilbert_dim, samples, hilbert_seed, limits)
                  << "  # certified lower bound, generically exact\n";
      }
    } else if (*eval) {
      const Structure s = load_structure(eval_structure, limits);
      const DiagramSum e = parse_element_literal(s.signature, eval_elem, limits);
      std::cout << rat_to_string(evaluate_element(e, s, limits)) << "\n";
    } else if (*rank) {
      const auto nd = parse_multidegree(rank_deg, sig.arity());
      int samples = rank_samples;
      if (samples <= 0) samples = static_cast<int>(graded_basis(sig, nd, limits).size()) + 5;
      std::cout << "# seed: " << rank_seed << "\n";
      std::cout << "rank " << evaluation_rank(sig, nd, rank_dim, samples, rank_seed, limits)
                << "  # certified lower bound, generically exact\n";
    } else if (*idgens) {
      const auto nd = parse_multidegree(idgens_deg, sig.arity());
      for (const auto& g : id_generators(idgens_dim, sig, nd, limits)) std::cout << print_element(g) << "\n";
    } else if (*endo) {
      if (*schur_expand) {
        std::cout << print_sym(schur_to_powersum(parse_partition_literal(se_part))) << "\n";
      } else if (*jt) {
        const Partition lambda = parse_partition_literal(jt_part);
        const SymFunc det = jacobi_trudi(lambda);
        std::cout << print_sym(det) << "\n";
        std::cout << (det == SymFunc::schur(lambda) ? "matches basis conversion" : "MISMATCH") << "\n";
      } else if (*in_ideal) {
        const Partition lambda = parse_partition_literal(ii_part);
        std::cout << (in_ideal_id(SymFunc::schur(lambda), ii_dim) ? "true" : "false") << "\n";
      } else if (*endo_product) {
        std::cout << print_sym(schur_product(parse_partition_literal(ep_a), parse_partition_literal(ep_b)))
                  << "\n";
      }
    } else if (*axioms) {
      const Theory theory = load_theory(th_file, th_builtin);
      if (*check_model) {
        const Structure s = load_structure(cm_structure, limits);
        std::cout << (is_model(theory, s, limits) ? "model" : "not a model") << "\n";
      } else if (*ax_pair) {
        if (ax_index < 0 || ax_index >= static_cast<int>(theory.axioms.size()))
          throw parse_error("axiom index out of range");
        const OpenDiagram y = parse_open_literal(theory.signature, ax_complement);
        std::cout << print_element(pair_element(theory.signature, theory.axioms[ax_index], y, limits)) << "\n";
      } else if (*ax_gens) {
        const auto gens = ideal_generators_upto(theory, ax_bound, limits);
        for (const auto& g : gens) std::cout << print_element(g) << "\n";
        if (!ax_check_structure.empty()) {
          const Structure s = load_structure(ax_check_structure, limits);
          bool all_vanish = true;
          for (const auto& g : gens)
            if (evaluate_element(g, s, limits) != 0) all_vanish = false;
          std::cout << (all_vanish ? "all vanish on the structure" : "NONZERO on the structure") << "\n";
        }
      }
    } else if (*verify) {
      std::cout << "# seed: " << verify_seed << "\n";
      std::vector<Check> checks;
      if (suite == "psh") {
        checks.push_back(check_psh_structure(verify_seed));
        checks.push_back(check_adjointness(6, 100, verify_seed));
      } else if (suite == "hilbert") {
        checks.push_back(check_hilbert_endo(verify_max_n));
        checks.push_back(check_hilbert_multitensor(std::min(verify_max_n, 5)));
      } else if (suite == "quotient") {
        checks.push_back(check_quotient_dims(5, 3, 30, verify_seed));
      } else if (suite == "endo") {
        checks.push_back(check_endo_suite(verify_seed));
      } else if (suite == "canon") {
        checks.push_back(check_canonicalization(200, verify_seed));
      } else if (suite == "axioms") {
        checks.push_back(check_axioms(50, verify_seed));
      } else if (suite == "kernel") {
        checks.push_back(check_kernel_generators(4, 20, verify_seed));
      } else if (suite == "sum-tensor") {
        checks.push_back(check_sum_tensor_compat(50, 4, verify_seed));
      } else if (suite == "adjoint") {
        checks.push_back(check_adjointness(6, 100, verify_seed));
      } else if (suite == "all") {
        checks = acceptance_checks();
      } else {
        throw parse_error("unknown suite: " + suite);
      }
      print_checks(checks, exit_code);
    }
  } catch (const parse_error& e) {
    std::cerr << "error[usage]: " << e.what() << "\n";
    return 2;
  } catch (const limit_error& e) {
    std::cerr << "error[limit]: " << e.what() << "\n";
    return 3;
  } catch (const domain_error& e) {
    std::cerr << "error[precondition]: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error[usage]: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
