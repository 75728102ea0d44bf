//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

// Scripted stand-in for an OCSR tool, used to exercise the adapter
// protocol. It answers from the corpus reference molfile next to the
// image (<corpus>/<subset>/<id>.png -> <corpus>/reference/<id>.mol).
//
//   oracle      print the reference molfile
//   fail-every  exit 1 when the numeric id prefix is divisible by --every
//   corrupt     print a wrong molecule when prefix % --modulus < --below
//   sleep       sleep --seconds, then behave as oracle
//   exit        exit with --exit-code and no output
//   empty       exit 0 with no output
//   smiles      print "SMILES: <--smiles>"
//   noisy       print a banner line, then the reference molfile

#include <fcntl.h>
#include <unistd.h>

#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ocsrbench/chemgraph/molfile.hpp"

namespace fs = std::filesystem;
using namespace ocsrbench;

namespace {

std::optional<long> numeric_prefix(const std::string &id) {
  std::size_t n = 0;
  while (n < id.size() && std::isdigit(static_cast<unsigned char>(id[n]))) {
    ++n;
  }
  if (n == 0) {
    return std::nullopt;
  }
  return std::stol(id.substr(0, n));
}

std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + p.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One write(2) per line so concurrent invocations do not interleave.
void append_log(const std::string &path, const std::string &line) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) {
    throw std::runtime_error("cannot open log " + path);
  }
  const std::string text = line + "\n";
  const ssize_t n = ::write(fd, text.data(), text.size());
  ::close(fd);
  if (n != static_cast<ssize_t>(text.size())) {
    throw std::runtime_error("short write to log " + path);
  }
}

std::string corrupted(const std::string &molfile, const std::string &id) {
  chemgraph::Molecule m = chemgraph::parse_molfile(molfile);
  const std::size_t extra = m.add_atom({ "C", 0, 0.0, 0.0 });
  m.add_bond(0, extra, chemgraph::BondOrder::kSingle);
  return chemgraph::write_molfile(m, id);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app { "mock OCSR adapter", "ocsr_mock" };
  std::string mode = "oracle";
  long every = 3;
  long modulus = 5;
  long below = 2;
  double seconds = 3600;
  int exit_code = 1;
  std::string smiles = "CCO";
  std::string log;
  std::string reference_dir;
  std::string image;
  app.add_option("--mode", mode)
      ->check(CLI::IsMember({ "oracle", "fail-every", "corrupt", "sleep", "exit",
                              "empty", "smiles", "noisy" }));
  app.add_option("--every", every)->check(CLI::PositiveNumber);
  app.add_option("--modulus", modulus)->check(CLI::PositiveNumber);
  app.add_option("--below", below);
  app.add_option("--seconds", seconds);
  app.add_option("--exit-code", exit_code);
  app.add_option("--smiles", smiles);
  app.add_option("--log", log, "append each image id to this file");
  app.add_option("--reference-dir", reference_dir);
  app.add_option("image", image)->required();
  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path img(image);
    const std::string id = img.stem().string();
    if (!log.empty()) {
      append_log(log, id);
    }
    const fs::path ref_dir = reference_dir.empty()
                                 ? img.parent_path().parent_path() / "reference"
                                 : fs::path(reference_dir);
    const fs::path reference = ref_dir / (id + ".mol");

    if (mode == "exit") {
      return exit_code;
    }
    if (mode == "empty") {
      return 0;
    }
    if (mode == "smiles") {
      std::cout << "SMILES: " << smiles << "\n";
      return 0;
    }
    if (mode == "sleep") {
      std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    }
    if (mode == "fail-every" || mode == "corrupt") {
      const std::optional<long> n = numeric_prefix(id);
      if (!n) {
        std::cerr << "ocsr_mock: image id " << id << " has no numeric prefix\n";
        return 3;
      }
      if (mode == "fail-every" && *n % every == 0) {
        return 1;
      }
      if (mode == "corrupt" && *n % modulus < below) {
        std::cout << corrupted(read_file(reference), id);
        return 0;
      }
    }
    if (mode == "noisy") {
      std::cout << "loading model weights... done\n";
    }
    std::cout << read_file(reference);
    return 0;
  } catch (const std::exception &e) {
    std::cerr << "ocsr_mock: " << e.what() << "\n";
    return 4;
  }
}
