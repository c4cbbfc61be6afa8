#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace testing_cli {

inline std::string config(const std::string& name) {
  return std::string(LANEGEO_CONFIG_DIR) + "/" + name;
}

/// Runs the CLI with the given argument string; returns its exit status.
inline int run(const std::string& args, bool quiet = true) {
  std::string cmd = std::string("\"") + LANEGEO_CLI_PATH + "\" " + args;
  if (quiet) cmd += " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// True when the file parses as XML with an <svg> root.
inline bool well_formed_svg(const std::filesystem::path& p) {
  try {
    boost::property_tree::ptree tree;
    std::ifstream in(p);
    boost::property_tree::read_xml(in, tree);
    return tree.count("svg") == 1;
  } catch (const boost::property_tree::xml_parser_error&) {
    return false;
  }
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("lanegeo_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing_cli
