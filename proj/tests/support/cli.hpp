#ifndef NOMAU_TESTS_CLI_HPP
#define NOMAU_TESTS_CLI_HPP

// Runs the nomau binary through the shell and reads sample fixtures.
// NOMAU_CLI and NOMAU_SAMPLES are set by the build.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cli {

struct Output {
  int status = -1;
  std::string out;
};

inline std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

/// Runs `nomau <args>`; stderr is discarded.
inline Output run(const std::string& args) {
  const std::string cmd = quote(NOMAU_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + cmd);
  Output o;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) o.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

inline std::string sample_path(const std::string& name) { return std::string(NOMAU_SAMPLES) + "/" + name + ".nau"; }

inline std::string read_sample(const std::string& name) {
  std::ifstream in(sample_path(name));
  if (!in) throw std::runtime_error("missing sample " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cli

#endif  // NOMAU_TESTS_CLI_HPP
