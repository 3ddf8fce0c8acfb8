// Classify a length vector, rebuild a chamber from its code, and read it as a voting game.
#include "tiecodes/games.hpp"
#include "tiecodes/genetic.hpp"
#include "tiecodes/strata.hpp"

#include <iostream>

using namespace tiecodes;

int main()
{
    RealVec a = parse_real_vec("5,3,1,3,2,1");
    RealVec sorted = canonical_real(a);
    GeneticCode code = genetic_code_of(sorted);
    std::cout << "code of (5,3,1,3,2,1): " << format_code(code) << "\n";

    // Any vector with the same code lies in the same chamber.
    auto witness = realize_code(code);
    std::cout << "realized by:";
    for (const auto& v : *witness)
        std::cout << " " << to_short_string(v);
    std::cout << "\n";

    Game g = game_from_lengths(sorted);
    std::cout << "decisive: " << std::boolalpha << is_decisive(g) << "\n";
    if (auto w = is_weighted_majority(g))
        std::cout << "weighted majority, " << w->size() << " weights\n";

    // A tie: 2 = 1 + 1 puts (1,1,2) on a wall.
    auto sig = signature_of(parse_real_vec("1,1,2"));
    std::cout << "stratum of (1,1,2): " << canonical_signature(sig).to_string() << "\n";

    std::cout << "v(6) = " << census(6, CensusMode::virtual_codes) << "\n";
}
