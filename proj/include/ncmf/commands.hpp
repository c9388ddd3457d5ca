#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncmf/error.hpp"
#include "ncmf/session.hpp"

namespace ncmf {

struct CommandRequest {
  std::string command;
  std::string target;  // declared name; empty picks the only candidate
  std::optional<int> hmax, tmax, pmax, steps, dim;
  std::string auto_name, element, transport;
  bool timings = false;
};

struct Report {
  nlohmann::ordered_json record;
  std::vector<std::string> lines;  // human-readable summary
  int exit_code = 0;               // 0 positive, 1 negative, 2 truncation-limited, 3 input error
};

Report run_command(const Session& s, const CommandRequest& req);
// Runs every verify directive of the session.
Report run_verifications(const Session& s);

std::string fnv1a_hex(const std::string& text);
int exit_code_for(ErrorKind kind);
Report error_report(const std::string& command, const Error& e);

}  // namespace ncmf
