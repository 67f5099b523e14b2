// Walks a small Z_8 code through the library: bases, characteristic matrix, the
// minimal tail-biting trellises, and one decode.

#include <iostream>

#include "zptrellis/charmatrix.hpp"
#include "zptrellis/pbasis.hpp"
#include "zptrellis/search.hpp"
#include "zptrellis/viterbi.hpp"

using namespace zpt;

int main() {
    const RingSpec z8(2, 3);
    std::vector<Codeword> m{Codeword(z8, std::vector<std::int64_t>{1, 2, 1, 2}),
                            Codeword(z8, std::vector<std::int64_t>{2, 0, 4, 2}),
                            Codeword(z8, std::vector<std::int64_t>{0, 0, 4, 4})};

    auto y0 = lex_first_biproper_basis(m);
    std::cout << "biproper basis\n";
    for (const auto& r : y0.rows) std::cout << "  " << r << "  " << char_triple(r).to_string() << "\n";

    auto x = characteristic_matrix(z8, 4, m);
    std::cout << "characteristic matrix (" << x.rows.size() << " rows)\n";
    for (std::size_t i = 0; i < x.rows.size(); ++i)
        std::cout << "  x" << i + 1 << " " << x.rows[i].codeword << "  " << x.rows[i].triple().to_string() << "\n";

    auto best = search_minimal_tailbiting(x, x.dimension, Order::Product);
    std::cout << best.size() << " product-minimal trellises, first uses";
    for (auto i : best.front().indices) std::cout << " x" << i + 1;
    std::cout << "\n  vertices " << format_profile(best.front().profile.vertices) << "\n";

    Word received{1, 6, 3, 1};
    auto d = viterbi_decode(best.front().trellis, received);
    std::cout << "decode (1,6,3,1) -> " << to_codeword(z8, d.word) << " cost " << d.cost << "\n";
    return d.cost == 1 ? 0 : 1;
}
