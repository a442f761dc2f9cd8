#ifndef NADE_TOOLS_CLI_HPP_
#define NADE_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace nade::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Environment variable naming the default lexicon file.
inline constexpr const char* kLexiconEnv = "NADE_LEXICON";

/// Runs `nade <verb> ...`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nade::cli

#endif  // NADE_TOOLS_CLI_HPP_
