#pragma once

// The knotpi command line: parsing, validation, and one report per command.
// tools/knotpi.cpp is a thin main around cli_main so everything here can be
// driven from tests.

#include "knotpi/cache.hpp"
#include "knotpi/report.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace knotpi {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitVerification = 3, kExitResource = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help anywhere; what() is the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Invocation {
  std::string command;  // chi, e1, e2, pi-table, verify-phi, verify-cosimplicial, collapse-check, homology-e2
  int n = 3;
  int d = 4;
  int weight = 2;
  int length = 3;  // homology word length for verify-cosimplicial
  int p_max = 5;
  int weight_max = 3;
  int m_max = 6;
  int degree_max = -1;  // homology-e2; -1 means 3(d-1)
  int r_max = 4;
  bool matrices = false;
  int max_weight = 6;
  std::size_t certify_limit = 6000;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::string> cache_dir;
  unsigned threads = 1;
};

/// Arguments without the program name. Throws UsageError or HelpRequested.
Invocation parse_invocation(const std::vector<std::string>& args);

/// Range checks done before any computation. Throws UsageError or ResourceGuard.
void validate_invocation(const Invocation& inv);

/// Runs a validated invocation. The cache may be null.
Report run_invocation(const Invocation& inv, const ComponentCache* cache);

/// kExitVerification when the report's summary says passed = false.
int report_exit_code(const Report& r);

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace knotpi
