#include "kp2stab/error.hpp"

namespace kp2stab {

const char* category_name(ErrorCategory c) {
    switch (c) {
    case ErrorCategory::config: return "config";
    case ErrorCategory::dimension: return "dimension";
    case ErrorCategory::solver: return "solver";
    case ErrorCategory::diagnostic: return "diagnostic";
    case ErrorCategory::io: return "io";
    }
    return "unknown";
}

}  // namespace kp2stab
