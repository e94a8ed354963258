#include "aterm/sweep.hpp"

namespace aterm::sweep {

std::vector<CaseRecord> run_cases_serial(const std::vector<Inputs>& cases, const CaseFn& fn) {
    std::vector<CaseRecord> out;
    out.reserve(cases.size());
    for (const auto& in : cases) {
        try {
            out.push_back(fn(in));
        } catch (const std::exception& e) {
            out.push_back(CaseRecord{in, {Check{"internal", "", "error", Status::mismatch, e.what()}}, 0, {}});
        }
    }
    return out;
}

}  // namespace aterm::sweep
