#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "folsym/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Symmetry actions on polynomial singular foliations"};
  std::string command, file;
  std::optional<std::string> point;
  std::optional<std::size_t> depth;
  std::string json_out;
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(folsym::commands()));
  app.add_option("file", file, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--point", point, "Name of the point to use");
  app.add_option("--depth", depth, "Resolution depth")->check(CLI::PositiveNumber);
  app.add_option("--json-out", json_out, "Write the machine-readable report here");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::ifstream in(file);
  std::stringstream buf;
  buf << in.rdbuf();

  folsym::RunOptions opts;
  opts.point = point;
  opts.depth = depth;
  folsym::Report report;
  try {
    report = folsym::run(command, folsym::parse_problem(buf.str()), opts);
  } catch (const std::exception& e) {
    report.command = command;
    report.summary = std::string("input error: ") + e.what();
    report.exit_code = 2;
  }

  std::cout << report.text();
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) {
      std::cerr << "cannot write " << json_out << "\n";
      return 2;
    }
    out << report.to_json().dump(2) << "\n";
  }
  return report.exit_code;
}
