#include "bimerton/reference_data.hpp"

#include <initializer_list>

namespace bimerton::reference {

namespace {

Array2D<double> rows3(std::initializer_list<std::array<double, 3>> rows) {
    Array2D<double> a(3, 3);
    std::size_t i = 0;
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = r[j];
        ++i;
    }
    return a;
}

}  // namespace

std::optional<ConvergenceTable> convergence_table(CaseId id, PayoffKind payoff) {
    if (id != CaseId::CaseI) return std::nullopt;
    if (payoff == PayoffKind::PutOnMin)
        return ConvergenceTable{id, payoff, {90.0, 90.0},
                                {16.374702, 16.383298, 16.387210, 16.389079, 16.389991},
                                16.390};
    return ConvergenceTable{id, payoff, {100.0, 100.0},
                            {3.431959, 3.436727, 3.439096, 3.440278, 3.440868},
                            3.442};
}

std::optional<DomainTable> domain_table(CaseId id, PayoffKind payoff) {
    if (id != CaseId::CaseI) return std::nullopt;
    if (payoff == PayoffKind::PutOnMin)
        return DomainTable{id, payoff, {90.0, 90.0},
                           {1.64e-8, 1.60e-8, 1.60e-8, 1.62e-8, 1.62e-8},
                           {4.92e-4, 4.78e-4, 4.74e-4, 4.74e-4, 4.76e-4}};
    return DomainTable{id, payoff, {100.0, 100.0},
                       {2.91e-7, 3.09e-7, 3.21e-7, 3.26e-7, 3.29e-7},
                       {6.12e-4, 6.37e-4, 6.69e-4, 6.82e-4, 6.91e-4}};
}

SpotTable spot_table(CaseId id, PayoffKind payoff) {
    const bool min = payoff == PayoffKind::PutOnMin;
    switch (id) {
        case CaseId::CaseI:
            if (min)
                return {id, payoff, {90.0, 100.0, 110.0},
                        rows3({{16.389991, 13.998405, 12.756851},
                               {13.020204, 9.619252, 7.876121},
                               {11.441389, 7.226153, 5.131663}}),
                        rows3({{16.391, 13.999, 12.758},
                               {13.021, 9.620, 7.877},
                               {11.443, 7.227, 5.132}})};
            return {id, payoff, {90.0, 100.0, 110.0},
                    rows3({{10.000000, 5.987037, 3.440343},
                           {6.028929, 3.440868, 1.886527},
                           {3.490665, 1.890874, 0.992933}}),
                    rows3({{10.003, 5.989, 3.441},
                           {6.030, 3.442, 1.877},
                           {3.491, 1.891, 0.993}})};
        case CaseId::CaseII:
            if (min)
                return {id, payoff, {36.0, 40.0, 44.0},
                        rows3({{15.469776, 14.566197, 13.796032},
                               {14.094647, 13.109244, 12.265787},
                               {12.924092, 11.879584, 10.984126}}),
                        rows3({{15.467, 14.564, 13.794},
                               {14.092, 13.107, 12.263},
                               {12.921, 11.877, 10.982}})};
            return {id, payoff, {36.0, 40.0, 44.0},
                    rows3({{5.405825, 4.363340, 3.547399},
                           {4.213899, 3.338840, 2.669076},
                           {3.224979, 2.506688, 1.969401}}),
                    rows3({{5.406, 4.363, 3.547},
                           {4.214, 3.339, 2.669},
                           {3.225, 2.507, 1.969}})};
        case CaseId::CaseIII:
            if (min)
                return {id, payoff, {36.0, 40.0, 44.0},
                        rows3({{21.750926, 20.917727, 20.176104},
                               {21.281139, 20.403611, 19.620525},
                               {20.906119, 19.992702, 19.176009}}),
                        rows3({{21.742, 20.908, 20.167},
                               {21.272, 20.394, 19.611},
                               {20.892, 19.983, 19.166}})};
            return {id, payoff, {36.0, 40.0, 44.0},
                    rows3({{12.472058, 11.935904, 11.446078},
                           {11.439979, 10.948971, 10.500581},
                           {10.499147, 10.049777, 9.639534}}),
                    rows3({{12.466, 11.930, 11.440},
                           {11.434, 10.943, 10.495},
                           {10.493, 10.043, 9.633}})};
    }
    return {};
}

}  // namespace bimerton::reference
