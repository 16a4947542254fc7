// Outcome tables for the comply games.
#include <iostream>

#include "comply/heap_games.hpp"
#include "comply/multiheap.hpp"

using namespace comply;

int main() {
  auto t = comply_number_outcomes(all_discrepancy_pairs(), 40);
  std::cout << "P-positions of the pair game up to 40:";
  for (Int x : t.p_positions()) std::cout << ' ' << x;
  std::cout << '\n';

  auto g = comply_outcomes_2d(line(), AvoidanceMode::MaxAc, 15, 15);
  std::cout << "\nline-nim outcomes (rows x, columns y):\n";
  for (Int x = 0; x <= 15; ++x) {
    for (Int y = 0; y <= 15; ++y) std::cout << outcome_char(g.at(x, y));
    std::cout << '\n';
  }

  if (auto p = best_proposal_2d(g, {5, 6})) {
    std::cout << "\nwinning proposal from (5,6):";
    for (auto& q : *p) std::cout << " (" << q.x << ',' << q.y << ')';
    std::cout << '\n';
  }

  for (TripleAP tr : {TripleAP(0, 1, 2), TripleAP(0, 2, 4), TripleAP(3, 7, 11)})
    std::cout << "heaps " << tr.x << ',' << tr.y << ',' << tr.z << ": " << outcome_char(three_heap_classify(tr)) << '\n';
}
