#pragma once

// Command-line front end. run() never calls exit(); it returns
//   0  success
//   1  invalid input or domain error (one line on `err`)
//   2  an output file could not be written

#include <ostream>
#include <string>
#include <vector>

namespace cbns::cli {

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cbns::cli
