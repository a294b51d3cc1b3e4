#pragma once

// Helpers that run the dc-optlab binary in a scratch directory.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

namespace clitest {

inline const std::string kCli = DCOPT_CLI_PATH;

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("dcopt_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// Runs `dc-optlab <args>` with stdout and stderr redirected to files in `dir`.
// `env` is prefixed to the command line, e.g. "DC_OPTLAB_THREADS=3".
inline int run(const ScratchDir& dir, const std::string& args, const std::string& env = "") {
  const std::string cmd = (env.empty() ? "" : env + " ") + "'" + kCli + "' " + args + " >'" +
                          dir.file("stdout.txt") + "' 2>'" + dir.file("stderr.txt") + "'";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace clitest
