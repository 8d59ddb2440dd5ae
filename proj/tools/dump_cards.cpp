// Writes every card definition as one JSON file so the deck is auditable
// against the printed list. Run from the repo root: dump_cards [outdir]
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mtg/cards.hpp"

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "data/cards";
  std::filesystem::create_directories(dir);
  int written = 0;
  for (const auto& d : mtg::cards::all_cards()) {
    std::ofstream out(dir / mtg::cards::card_file_name(d), std::ios::trunc);
    out << mtg::cards::card_to_json(d);
    ++written;
  }
  std::cout << written << " card files written to " << dir << "\n";
  return 0;
}
