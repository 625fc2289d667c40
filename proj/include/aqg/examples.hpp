#pragma once

#include <memory>
#include <string>
#include <vector>

#include "aqg/presentation.hpp"

namespace aqg {

/// Finite group given by its multiplication table; identity is element 0.
struct FiniteGroup {
    std::string name;
    std::vector<std::vector<std::uint32_t>> table;   // table[g][h] = g*h
    std::vector<std::uint32_t> inv;
    std::vector<std::string> labels;

    std::size_t order() const { return table.size(); }

    static FiniteGroup cyclic(unsigned n);
    static FiniteGroup symmetric3();
    static FiniteGroup dihedral4();                  // symmetries of the square, order 8
    static FiniteGroup by_name(const std::string& token);  // "Z2", "Z4", "Z8", "S3", "D4"

    /// Table sanity: associativity, identity, two-sided inverses.
    bool valid() const;
};

/// Group algebra C[G]: basis u_g, u_g u_h = u_{gh}, group-like coproduct.
std::shared_ptr<Presentation> make_group_algebra(const FiniteGroup& g);

/// Function algebra F(G): orthogonal idempotents e_g, convolution coproduct.
std::shared_ptr<Presentation> make_function_algebra(const FiniteGroup& g);

/// Polynomial *-algebra of quantum SU(2) at rational 0 < q < 1, with the
/// PBW monomial basis a^k c^l c*^m / a*^k c^l c*^m graded by total degree
/// and the Haar integral solved exactly from the invariance equations.
std::shared_ptr<Presentation> make_suq2(const mpq_class& q, int max_degree);

/// Resolve a CLI example token: "group:C[Z8]", "group:F[S3]", "suq2".
/// q and degree only apply to suq2.
std::shared_ptr<Presentation> make_example(const std::string& token, const mpq_class& q,
                                           int degree);

std::vector<std::string> builtin_example_tokens();

/// q of a suq2 presentation; nullopt for other families.
std::optional<mpq_class> suq2_parameter(const Presentation& p);

}  // namespace aqg
