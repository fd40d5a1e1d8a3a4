// sgcalc: run a supergeometry session script.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "supergeom/supergeom.h"

namespace {

struct Owned {
  char* s = nullptr;
  ~Owned() { sg_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

bool read_all(const std::string& path, std::string& out) {
  if (path.empty() || path == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact super linear algebra and supergeometry calculator"};
  std::string script_path;
  std::string json_out;
  bool keep_going = false;
  uint64_t seed = 1;
  app.add_option("--script", script_path, "Session script (default: stdin)");
  app.add_option("--json-out", json_out, "Write exported values as JSON to this file");
  app.add_flag("--keep-going", keep_going, "Continue after a failing statement");
  app.add_option("--seed", seed, "Seed for randomized selftest commands");
  CLI11_PARSE(app, argc, argv);

  std::string script;
  if (!read_all(script_path, script)) {
    std::cerr << "sgcalc: cannot read " << script_path << "\n";
    return 2;
  }

  sg_session* session = nullptr;
  if (sg_session_create(&session) != SG_OK) {
    std::cerr << "sgcalc: " << sg_last_error() << "\n";
    return 2;
  }
  sg_session_set_seed(session, seed);
  sg_session_set_keep_going(session, keep_going ? 1 : 0);
  if (!script_path.empty() && script_path != "-") {
    const auto dir = std::filesystem::path(script_path).parent_path();
    sg_session_set_base_dir(session, dir.empty() ? "." : dir.string().c_str());
  }

  Owned report, errors;
  const sg_status status = sg_session_run(session, script.c_str(), &report.s, &errors.s);
  std::cout << report.str();
  std::cout.flush();
  std::cerr << errors.str();
  if (status != SG_OK && errors.str().empty()) std::cerr << "sgcalc: " << sg_last_error() << "\n";

  int rc = status == SG_OK ? 0 : 1;
  if (!json_out.empty()) {
    Owned json;
    if (sg_session_exports_json(session, &json.s) != SG_OK) {
      std::cerr << "sgcalc: " << sg_last_error() << "\n";
      rc = rc ? rc : 1;
    } else {
      std::ofstream out(json_out, std::ios::binary);
      out << json.str();
      if (!out) {
        std::cerr << "sgcalc: cannot write " << json_out << "\n";
        rc = rc ? rc : 2;
      }
    }
  }
  sg_session_free(session);
  return rc;
}
