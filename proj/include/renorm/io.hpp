#pragma once

#include <json.hpp>
#include <optional>

#include "renorm/diagnostics.hpp"
#include "renorm/lie_structure.hpp"
#include "renorm/normalizer.hpp"

namespace renorm::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Scalars serialize as [re, im]: "p/q" strings on the exact backend
/// (bit-exact round trip), plain numbers on the floating one.
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

/// {"n":2,"N":6,"terms":[{"m":[2,0],"r":1,"c":["1/2","0"]}]}; r is 1-based.
json field_to_json(const PolyVectorField& f);
PolyVectorField field_from_json(const json& j);

json generator_sequence_to_json(const GeneratorSequence& seq);
GeneratorSequence generator_sequence_from_json(const json& j);

json monomial_to_json(const MonomialIndex& mi);
json result_to_json(const NormalFormResult& r);
json check_report_to_json(const CheckReport& r);
json scan_to_json(const SmallDenominatorScan& s);
json condition_a_to_json(const ConditionAResult& c);
json module_decomposition_to_json(const ModuleDecomposition& d);
json poly_to_json(const ScalarPoly& p);

/// Parsed form of a system description file: diagonal (or zero) linear
/// part given by eigenvalues, nonlinear terms of grade >= 1, optional
/// real-pair structure.
struct SystemSpec {
    int n = 0;
    int N = 0;
    std::string backend = "exact";
    Eigenvalues lambda;
    std::optional<RealPairStructure> real_pairs;
    PolyVectorField nonlinear;  // grades >= 1

    PolyVectorField full_field() const;
};

SystemSpec system_spec_from_json(const json& j);
json system_spec_to_json(const SystemSpec& s);

/// Raised on malformed input documents; the CLI maps it to exit code 2.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace renorm::io
