#pragma once

#include "semiample/coxring.hpp"
#include "semiample/divisor.hpp"
#include "semiample/errors.hpp"
#include "semiample/fan.hpp"
#include "semiample/polytope.hpp"
#include "semiample/residue.hpp"

#include "json.hpp"

#include <memory>
#include <string>

namespace semiample {

// Insertion-ordered so that reports serialize identically run to run.
using Json = nlohmann::ordered_json;

// A schema violation at a JSON pointer into the input document.
class InputError : public ValidationError {
public:
    InputError(std::string path, const std::string& what)
        : ValidationError(path + ": " + what), path_(std::move(path)), detail_(what) {}
    const std::string& path() const { return path_; }
    const std::string& detail() const { return detail_; }

private:
    std::string path_, detail_;
};

// Fetch a required member; InputError names the path when it is missing.
const Json& member(const Json& obj, const std::string& key, const std::string& path);
std::string child(const std::string& path, const std::string& key);
std::string child(const std::string& path, std::size_t i);

// Integers and rationals may be JSON integers or strings "p" / "p/q".
Integer read_integer(const Json& j, const std::string& path);
long read_small_integer(const Json& j, const std::string& path);
Rational read_rational(const Json& j, const std::string& path);
// length 0 means any nonzero length
LatticeVector read_lattice_vector(const Json& j, const std::string& path, std::size_t length = 0);

// {"rays": [[...], ...], "cones": [[i, j, ...], ...]}; indices and lengths are checked
// here, the geometric fan axioms by validate_fan.
Fan read_fan(const Json& j, const std::string& path);
// InputError listing the violations unless the fan is a valid fan.
void validate_fan(const Fan& f, const std::string& path);
std::shared_ptr<const Fan> read_valid_fan(const Json& j, const std::string& path);

TorusInvariantDivisor read_divisor(std::shared_ptr<const Fan> fan, const Json& j, const std::string& path);

// {"terms": [{"exponents": [...], "coefficient": "p/q"}, ...], "degree": [...]?}
// degree is needed only for the zero polynomial.
GradedPolynomial read_polynomial(const std::shared_ptr<const ClassGroup>& g, const Json& j, const std::string& path);

// {"vertices": [[...], ...]} or {"inequalities": [{"normal": [...], "rhs": r}, ...]}
LatticePolytope read_polytope(const Json& j, const std::string& path);

Json to_json(const Integer& x);
Json to_json(const Rational& x);
Json to_json(const LatticeVector& v);
Json to_json(const RationalVector& v);
Json to_json(const ConeRef& c);
Json to_json(const Fan& f);
Json to_json(const LatticePolytope& p);  // vertices
Json to_json(const PairingValue& v);
Json to_json(const GradedPolynomial& f);
Json count_json(std::size_t n);

}  // namespace semiample
