// cilie <command> <jobfile> [--format text|json] [--degree D] [--window D0:D]
//       [--order grevlex|lex] [--n N] [--max-monomials M] [--max-width W]
//
// Exit codes: 0 success, 1 parse or validation error, 2 mathematical
// precondition violated, 3 resource limit exceeded.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cilie/job.hpp"
#include "cilie/report.hpp"

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::optional<std::pair<int, int>> parse_window(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return std::nullopt;
  try {
    std::size_t a = 0, b = 0;
    const int lo = std::stoi(s.substr(0, colon), &a);
    const int hi = std::stoi(s.substr(colon + 1), &b);
    if (a != colon || b != s.size() - colon - 1) return std::nullopt;
    return std::make_pair(lo, hi);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void print_findings(std::ostream& os, const std::vector<cilie::JobFinding>& findings) {
  for (const auto& f : findings) os << (f.field.empty() ? "job" : f.field) << ": " << f.message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derived local invariants of complete intersections"};
  std::string command, path, format = "text", window, order;
  std::optional<int> degree, n;
  std::optional<long long> max_monomials, max_width;
  std::vector<std::string> commands = cilie::job_commands();
  commands.push_back("validate");
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(commands));
  app.add_option("jobfile", path, "Job file (JSON)")->required();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--degree", degree, "Degree bound");
  app.add_option("--window", window, "Finite-generation window D0:D");
  app.add_option("--order", order, "Monomial order")->check(CLI::IsMember({"grevlex", "lex"}));
  app.add_option("--n", n, "Tower stage");
  app.add_option("--max-monomials", max_monomials, "Monomial cap per Groebner run");
  app.add_option("--max-width", max_width, "Largest free module rank in a resolution");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read job file '" << path << "'\n";
    return 1;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  cilie::JobOverrides overrides{degree, std::nullopt, n, std::nullopt, max_monomials, max_width};
  if (!order.empty()) overrides.order = order;
  if (!window.empty()) {
    overrides.window = parse_window(window);
    if (!overrides.window) {
      std::cerr << "--window: expected D0:D, got '" << window << "'\n";
      return 1;
    }
  }

  const bool validate_only = command == "validate";
  const cilie::JobValidation v = cilie::validate_job(text, validate_only ? std::string() : command, overrides);
  if (validate_only) {
    if (v.findings.empty())
      std::cout << "no findings\n";
    else
      print_findings(std::cout, v.findings);
    return 0;
  }
  if (!v.job) {
    print_findings(std::cerr, v.findings);
    return 1;
  }

  try {
    const cilie::Report report = cilie::run_job(*v.job, sha256_hex(text));
    if (format == "json")
      std::cout << report.dump(2) << '\n';
    else
      std::cout << cilie::render_text(report);
  } catch (const cilie::InputError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const cilie::MathError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return 2;
  } catch (const cilie::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
