#ifndef AMU_TEXTIO_HPP
#define AMU_TEXTIO_HPP

#include <json.hpp>
#include <string>

#include "amu/bounds.hpp"
#include "amu/connection.hpp"
#include "amu/fuchs.hpp"
#include "amu/periods.hpp"

namespace amu {

using Json = nlohmann::ordered_json;

// fixed-format double so identical runs emit identical bytes
std::string fmt_double(double x);
Json json_complex(const Cx& z);
Json json_matrix(const Eigen::MatrixXcd& m);

Json json_header(const std::string& record, unsigned long long seed);

Json to_json(const ConnectionSystem& cs);
Json to_json(const StratumLabel& lab);
Json to_json(const ExponentSet& e);
Json to_json(const DeterminingEquation& de);
Json to_json(const BoundResult& r, const BoundQuery& q);
Json to_json(const PeriodSample& p);
Json to_json(const FitResult& f);
Json to_json(const FuchsOperator& op);
Json to_json(const IsoReport& rep);

std::string connection_text(const ConnectionSystem& cs);

}  // namespace amu

#endif
