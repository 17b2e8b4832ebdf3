#pragma once

// Expected values used by `ehae verify`.

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace golden {

struct Column {
    int g, h;
    int d_first;                  // first listed d, step 2
    std::vector<std::string> n;   // exact integers
};

inline const std::vector<Column>& bps_columns() {
    static const std::vector<Column> cols = {
        {0, 4, 2, {"0", "0", "0", "-307669500", "-1290543544800", "-4192442370526500", "-11974312128284645400",
                   "-31709386561589633978460", "-79870219101822591783739800", "-194146223749422074623095454800"}},
        {0, 5, 1, {"0", "0", "0", "0", "0", "-101052180000", "-6448499064000", "2809704427965432000",
                   "19034205058652662269000", "85987169904148441092385200"}},
        {0, 6, 2, {"0", "0", "0", "0", "0", "0", "10969992383850000", "88807052603386080000",
                   "453871851092663617206000", "1856308715086126538509560000"}},
        {1, 1, 1, {"0", "0", "-222535", "-472460880", "-970639017980", "-1925950714205525", "-3771152449472734885",
                   "-7341083828377813532445", "-14254813486499789264497980", "-27655486644196368361422400900"}},
        {1, 2, 2, {"0", "0", "0", "-1798092240", "-3910898328975", "-3254492224834500", "11749281716111889000",
                   "75858033724596666836250", "284100639663878543462155290", "881568399267730913608111758000"}},
        {1, 3, 1, {"0", "0", "0", "0", "0", "59476704611850", "376498723243912410", "1597793312432171312570",
                   "5622302692504776557418000", "17697465511801448466779111250"}},
        {1, 4, 2, {"0", "0", "0", "0", "0", "0", "-510835096894879500", "-4625213168889849497100",
                   "-26075494174267321098602160", "-116382815077174964736448167150"}},
    };
    return cols;
}

inline const std::vector<std::pair<std::pair<int, int>, int>>& graph_counts() {
    static const std::vector<std::pair<std::pair<int, int>, int>> c = {
        {{0, 3}, 4}, {{1, 1}, 4}, {{0, 4}, 19}, {{0, 5}, 83}, {{1, 2}, 29}, {{2, 1}, 97}};
    return c;
}

// (0,4) ambiguity as a numerator over 10000 (1 - 3125 z)^2.
inline const std::vector<std::string>& f04_numerator() {
    static const std::vector<std::string> c = {"2", "-20125", "70618750", "-86493078125"};
    return c;
}

}  // namespace golden
