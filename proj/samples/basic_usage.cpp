// Jacobi sequences of a product Gaussian and of a two-point measure.
#include <iostream>

#include <jacobi_mv.hpp>

using namespace jacobi_mv;

int main()
{
    const auto gauss = MomentFunctional::gaussian_product(2);
    const auto ops = build_cap_operators(decompose<Rational>(gauss, 3));
    const auto seq = compute(ops, 2);

    const auto classes = seq.classes(2);
    std::cout << "Omega_2 for " << gauss.describe() << ":\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        std::cout << "  " << classes[i].str() << "  " << seq.omega(2)(i, i) << '\n';
    }
    std::cout << "E[x1^2 x2^2] from the sequences: " << reconstruct_moment(seq, MultiIndex{2, 2}) << '\n';

    const auto atoms = MomentFunctional::atomic(2, {Atom{{0, 0}, Rational(1, 2)}, Atom{{1, 1}, Rational(1, 2)}});
    const auto found = detect_atoms(atoms, 4);
    if (found.conclusive()) {
        std::cout << "Omega vanishes from level " << *found.n0 << ", at most " << *found.atom_bound << " atoms\n";
    }

    const auto report = verify_family(FamilySpec::laguerre({Rational(1, 2), Rational(3, 2)}), 3);
    std::cout << report.spec.describe() << ": " << (report.passed ? "matches" : "differs") << '\n';
}
