// Derives the radix-4 selection table and prints either the C++ data file
// compiled into the library or the plain-text matrix.
//
//   gen_r4_table --cpp  > src/r4_table.cpp
//   gen_r4_table --text > data/r4_selection_table.txt

#include <cstdio>
#include <cstring>
#include <iostream>

#include "posdiv/qds.hpp"

int main(int argc, char** argv)
{
    const bool cpp = argc > 1 && std::strcmp(argv[1], "--cpp") == 0;
    posdiv::SelectionTable table;
    try {
        table = posdiv::build_r4_table();
    } catch (const posdiv::SelectionError& e) {
        std::cerr << "table construction failed: " << e.what() << '\n';
        return 1;
    }
    const auto report = posdiv::verify_r4_table(table);
    if (!report.ok) {
        std::cerr << "containment check failed: " << report.first_failure << '\n';
        return 1;
    }
    if (!cpp) {
        std::cout << table.serialize();
        return 0;
    }

    std::cout << "// Generated by tools/gen_r4_table --cpp. Do not edit by hand.\n\n"
                 "#include \"posdiv/qds.hpp\"\n\n"
                 "namespace posdiv {\n\n"
                 "const SelectionTable& r4_table()\n{\n"
                 "    // m_-1, m_0, m_1, m_2 in units of 1/16 per divisor row\n"
                 "    static const SelectionTable table{{{\n";
    for (const auto& row : table.bounds) {
        std::printf("        {%d, %d, %d, %d},\n", row[0], row[1], row[2], row[3]);
    }
    std::cout << "    }}};\n"
                 "    return table;\n}\n\n"
                 "int select_r4_table(Estimate y_hat, int row)\n{\n"
                 "    if (y_hat.frac_bits != kR4EstimateFracBits) {\n"
                 "        throw SelectionError(\"radix-4 table selection needs a 4-fraction-bit estimate\");\n"
                 "    }\n"
                 "    if (y_hat.raw < kR4EstimateMin || y_hat.raw >= kR4EstimateMin + kR4EstimateCells) {\n"
                 "        throw SelectionError(\"radix-4 table selection: estimate \" + y_hat.to_string() +\n"
                 "                             \" outside the 7-bit window\");\n"
                 "    }\n"
                 "    return r4_table().select(row, y_hat.raw);\n}\n\n"
                 "}  // namespace posdiv\n";
    return 0;
}
