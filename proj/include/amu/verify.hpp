#ifndef AMU_VERIFY_HPP
#define AMU_VERIFY_HPP

#include <string>
#include <vector>

namespace amu {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// ids empty = all nine criteria
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            unsigned long long seed);

// suite name to criterion id; returns 0 when unknown
int suite_id(const std::string& name);
std::vector<std::string> suite_names();

}  // namespace amu

#endif
