#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "supergeom/error.hpp"
#include "supergeom/parser.hpp"
#include "supergeom/value.hpp"

namespace sg {

struct SessionOptions {
  bool keep_going = false;
  std::uint64_t seed = 1;
  /// Directory against which relative import paths resolve.
  std::string base_dir = ".";
};

struct RunResult {
  std::string report;
  /// One line per failed statement.
  std::string errors;
  unsigned error_count = 0;
  std::optional<ErrorCode> first_error;

  bool ok() const { return error_count == 0; }
};

/// Line-oriented script interpreter. Bindings persist across run() calls.
class Session {
 public:
  explicit Session(SessionOptions options = {});

  RunResult run(std::string_view script);

  const Value* lookup(const std::string& name) const;
  void bind(const std::string& name, Value v);

  /// Values named by `export` statements, in order of first export.
  const NamedValues& exports() const { return exports_; }
  std::string exports_json() const { return exports_to_json(exports_); }

  SessionOptions& options() { return options_; }

 private:
  void execute(std::string_view line, SourcePos at, std::string& out);

  const ContextPtr& active() const;
  ContextPtr context_named(const std::string& name) const;
  template <typename T>
  const T& get(const std::string& name) const;
  PolyLookup poly_lookup() const;

  SessionOptions options_;
  std::map<std::string, Value> bindings_;
  ContextPtr active_;
  NamedValues exports_;
  std::string last_group_;
  std::string last_variety_;
};

}  // namespace sg
