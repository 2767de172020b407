// liebasis: operator counts, completeness verification and isotypic
// decomposition for su(n) two-factor product representations.
//
//   liebasis counts --n-max 6
//   liebasis verify --n 3 --rep1 adjoint --rep2 adjoint --basis coupled [--with-exchange]
//   liebasis decompose --n 3 --rep1 adjoint --rep2 adjoint
//
// Exit status: 0 all checks pass, 2 a check failed, 3 invalid configuration.

#include "liebasis/report.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>
#include <string>

namespace {

using namespace liebasis;

const std::map<std::string, RepKind> kRepNames{
    {"defining", RepKind::defining}, {"conjugate", RepKind::conjugate}, {"adjoint", RepKind::adjoint}};
const std::map<std::string, BasisKind> kBasisNames{{"product", BasisKind::product}, {"coupled", BasisKind::coupled}};
const std::map<std::string, OutputFormat> kFormatNames{{"json", OutputFormat::json},
                                                       {"markdown", OutputFormat::markdown}};

struct Names {
  std::string rep1, rep2, basis = "coupled", format = "json";

  void apply(RunConfig& cfg) const {
    cfg.rep1 = kRepNames.at(rep1);
    cfg.rep2 = kRepNames.at(rep2);
    cfg.basis = kBasisNames.at(basis);
    cfg.format = kFormatNames.at(format);
  }
};

void add_common(CLI::App* cmd, RunConfig& cfg, Names& names) {
  cmd->add_option("--n", cfg.n, "su(n) rank parameter")->required();
  cmd->add_option("--rep1", names.rep1, "first factor representation")->required()->check(CLI::IsMember(kRepNames));
  cmd->add_option("--rep2", names.rep2, "second factor representation")->required()->check(CLI::IsMember(kRepNames));
  cmd->add_option("--format", names.format, "output format")->check(CLI::IsMember(kFormatNames));
  cmd->add_option("--cluster-tol", cfg.tolerances.cluster_tol, "relative eigenvalue clustering gap");
  cmd->add_option("--cache-dir", cfg.cache_dir, "operator matrix cache (overrides LIEBASIS_CACHE_DIR)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Commuting operator sets for su(n) product representations"};
  app.require_subcommand(1);

  int n_max = 4;
  std::string counts_format = "json";
  auto* counts = app.add_subcommand("counts", "closed-form and enumerated operator counts");
  counts->add_option("--n-max", n_max, "largest n in the table")->required();
  counts->add_option("--format", counts_format, "output format")->check(CLI::IsMember(kFormatNames));

  RunConfig verify_cfg;
  Names verify_names;
  auto* verify = app.add_subcommand("verify", "commutation, rank and completeness of an operator set");
  add_common(verify, verify_cfg, verify_names);
  verify->add_option("--basis", verify_names.basis, "label set")->required()->check(CLI::IsMember(kBasisNames));
  verify->add_flag("--with-exchange", verify_cfg.with_exchange, "append the factor exchange operator");
  verify->add_option("--tol", verify_cfg.tolerances.commute_tol, "relative commutator tolerance");
  verify->add_option("--scalar-tol", verify_cfg.tolerances.scalar_tol, "relative scalar-operator tolerance");

  RunConfig decompose_cfg;
  Names decompose_names;
  auto* decompose = app.add_subcommand("decompose", "isotypic decomposition and multiplicities");
  add_common(decompose, decompose_cfg, decompose_names);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::invalid_config;
  }

  try {
    CommandResult result;
    OutputFormat format = OutputFormat::json;
    if (counts->parsed()) {
      result = cmd_counts(n_max);
      format = kFormatNames.at(counts_format);
    } else if (verify->parsed()) {
      verify_names.apply(verify_cfg);
      result = cmd_verify(verify_cfg);
      format = verify_cfg.format;
    } else {
      decompose_names.apply(decompose_cfg);
      result = cmd_decompose(decompose_cfg);
      format = decompose_cfg.format;
    }
    std::cout << render(result, format);
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return exit_code::invalid_config;
  } catch (const DomainError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return exit_code::invalid_config;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return exit_code::check_failed;
  }
}
