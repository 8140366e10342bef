// Command-line front end: period queries, modular chain evaluation,
// certificate construction and verification.

#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "itercert/cache.hpp"
#include "itercert/certdoc.hpp"
#include "itercert/certify.hpp"
#include "itercert/seqfile.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct GlobalOptions {
  std::string sequences = "sequences.itseq";
  std::string cache_path;
  std::string bound = "1000000";
  std::uint64_t checks = 3;
  bool strict_paper = false;
  double epsilon = 1e-4;
  unsigned precision = 256;
};

itercert::CertifyOptions make_opts(const GlobalOptions& g) {
  itercert::CertifyOptions opts;
  opts.factor_bound = itercert::Int(g.bound);
  opts.strict_paper = g.strict_paper;
  return opts;
}

std::unique_ptr<itercert::PeriodCache> make_cache(const GlobalOptions& g) {
  if (g.cache_path.empty()) return std::make_unique<itercert::PeriodCache>();
  return std::make_unique<itercert::PersistentPeriodCache>(g.cache_path);
}

void print_report(const itercert::VerificationReport& report) {
  for (const auto& c : report.checks) {
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.claim;
    if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
    std::cout << "\n";
  }
  std::cout << (report.all_pass() ? "all checks passed" : "CHECKS FAILED")
            << " (" << report.checks.size() << " checks)\n";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace itercert;

  CLI::App app{"Composite certificates for iterated linear recurrences"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--sequences", g.sequences, "Sequence definition file")
      ->envname("ITERCERT_SEQUENCES");
  app.add_option("--cache", g.cache_path, "Persistent period cache file")
      ->envname("ITERCERT_CACHE");
  app.add_option("--bound", g.bound, "Smallest-prime-factor search bound B")
      ->envname("ITERCERT_BOUND");
  app.add_option("--checks", g.checks, "Verification check count")
      ->envname("ITERCERT_CHECKS");
  app.add_flag("--strict-paper", g.strict_paper,
               "Combine periods as a product over distinct primes instead of lcm")
      ->envname("ITERCERT_STRICT_PAPER");
  app.add_option("--epsilon", g.epsilon, "Epsilon in the delta constant")
      ->envname("ITERCERT_EPSILON");
  app.add_option("--precision", g.precision, "Root-finding precision in bits")
      ->envname("ITERCERT_PRECISION");

  // period <sequence> <q>
  auto* cmd_period = app.add_subcommand("period", "Preperiod/period mod q");
  std::string seq_name, q_str;
  cmd_period->add_option("sequence", seq_name)->required();
  cmd_period->add_option("q", q_str)->required();

  // eval-mod <chain> <n> <q>
  auto* cmd_eval = app.add_subcommand("eval-mod", "f(n) mod q via the tower");
  std::string chain_name, n_str, q2_str;
  cmd_eval->add_option("chain", chain_name)->required();
  cmd_eval->add_option("n", n_str)->required();
  cmd_eval->add_option("q", q2_str)->required();

  // certify <variant> ...
  auto* cmd_certify = app.add_subcommand("certify", "Build a certificate");
  std::string variant, target, inner_name, H_str = "0", m_str = "1";
  std::string out_path = "certificate.json";
  cmd_certify->add_option("variant", variant,
                          "divisibility | interval | pisot-floor")
      ->required()
      ->check(CLI::IsMember({"divisibility", "interval", "pisot-floor"}));
  cmd_certify->add_option("target", target, "Chain name (or polynomial name)")
      ->required();
  cmd_certify->add_option("--inner", inner_name,
                          "Inner chain for pisot-floor");
  cmd_certify->add_option("--H", H_str, "H (divisibility) or H' (pisot-floor)");
  cmd_certify->add_option("--m", m_str, "Progression start m");
  cmd_certify->add_option("-o,--output", out_path, "Certificate output path");

  // verify <path>
  auto* cmd_verify = app.add_subcommand("verify", "Verify a certificate");
  std::string cert_path;
  cmd_verify->add_option("path", cert_path)->required();

  // theta <X>
  auto* cmd_theta = app.add_subcommand("theta", "Chebyshev theta(X)");
  double theta_x = 2;
  cmd_theta->add_option("X", theta_x)->required();

  // delta --n <n> --D <D>
  auto* cmd_delta = app.add_subcommand("delta", "Prime-free half-width estimate");
  std::string delta_n = "3", delta_d = "1";
  cmd_delta->add_option("--n", delta_n)->required();
  cmd_delta->add_option("--D", delta_d, "Product of the chain orders")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    auto cache = make_cache(g);
    CertifyOptions opts = make_opts(g);

    if (*cmd_period) {
      SequenceFile sf = SequenceFile::load(g.sequences);
      PeriodInfo info =
          cache->get_or_compute(sf.sequence(seq_name), Int(q_str));
      std::cout << "s=" << info.s << " L=" << info.L
                << " bound_checked=" << (info.bound_checked ? "yes" : "no")
                << "\n";
      return kExitOk;
    }

    if (*cmd_eval) {
      SequenceFile sf = SequenceFile::load(g.sequences);
      CompositionChain chain = sf.chain(chain_name);
      std::cout << eval_chain_mod(chain, Int(n_str), Int(q2_str), nullptr,
                                  cache.get())
                << "\n";
      return kExitOk;
    }

    if (*cmd_certify) {
      SequenceFile sf = SequenceFile::load(g.sequences);
      Certificate cert = [&]() -> Certificate {
        if (variant == "divisibility")
          return certify_divisibility(sf.chain(target), Int(H_str), Int(m_str),
                                      cache.get(), opts);
        if (variant == "interval")
          return certify_prime_free_interval(sf.chain(target), Int(m_str),
                                             cache.get(), opts);
        if (inner_name.empty())
          throw InputError("pisot-floor requires --inner <chain>");
        return certify_pisot_floor(sf.polynomial(target), sf.chain(inner_name),
                                   Int(H_str), Int(m_str), cache.get(), opts);
      }();
      write_certificate(out_path, cert);
      std::cout << "certificate written to " << out_path << "\n";
      return kExitOk;
    }

    if (*cmd_verify) {
      Certificate cert = read_certificate(cert_path);
      VerificationReport report = verify_certificate(cert, g.checks, opts);
      print_report(report);
      return report.all_pass() ? kExitOk : kExitVerifyFail;
    }

    if (*cmd_theta) {
      std::cout << theta(theta_x) << "\n";
      return kExitOk;
    }

    if (*cmd_delta) {
      DeltaEstimate est = delta_estimate(Int(delta_n), Int(delta_d), g.epsilon);
      std::cout << "main_term=" << est.main_term << " c=" << est.c
                << " c_symbolic=\"" << est.c_symbolic << "\""
                << " (main term only; the error constant is ineffective)\n";
      return kExitOk;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const NoFactorFound& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "hint: raise --bound or pick another m\n";
    return kExitInput;
  } catch (const HTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "hint: lower H or pick a larger m\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
