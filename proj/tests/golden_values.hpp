#pragma once

// Published reference values (means over 3-fold x 10 runs) used as golden data.

#include <array>
#include <string_view>

namespace golden {

struct CostRow {
  std::string_view name;
  double alpha_n;
  double trn;
  double trp;
  double lambda_rn;
  double lambda_rp;
};

// kNN-based optimal parameters and their equivalent rejection costs.
inline constexpr std::array<CostRow, 12> kKnnCosts{{
    {"Ism", 0.2312, 0.0743, 0.7643, 0.0272, 0.6616},
    {"Nursery", 0.3482, 0.1215, 0.7125, 0.0288, 0.7914},
    {"Letter", 0.3802, 0.1284, 0.6140, 0.0760, 0.4838},
    {"Rooftop", 0.1372, 0.0705, 0.7733, 0.0544, 0.2823},
    {"Pendigits", 0.4714, 0.1745, 0.3890, 0.1710, 0.1913},
    {"Optdigits", 0.4061, 0.1487, 0.5913, 0.0964, 0.4481},
    {"Vehicle", 0.1972, 0.1101, 0.6266, 0.1045, 0.1556},
    {"Yeast", 0.3610, 0.1245, 0.5608, 0.0937, 0.3414},
    {"Phoneme", 0.4651, 0.1319, 0.4543, 0.1066, 0.2985},
    {"German", 0.3848, 0.1915, 0.6021, 0.1542, 0.3489},
    {"Diabetes", 0.3725, 0.1725, 0.5284, 0.1585, 0.2398},
    {"Gamma", 0.5682, 0.1663, 0.4188, 0.1376, 0.3103},
}};

// Parzen-window Bayes based rows.
inline constexpr std::array<CostRow, 12> kBayesCosts{{
    {"Ism", 0.1420, 0.0222, 0.8560, 0.0041, 0.8198},
    {"Nursery", 0.1052, 0.0593, 0.8845, 0.0237, 0.6242},
    {"Letter", 0.1155, 0.0687, 0.8772, 0.0273, 0.6302},
    {"Rooftop", 0.0786, 0.0242, 0.8363, 0.0170, 0.3147},
    {"Pendigits", 0.4283, 0.1521, 0.6170, 0.0782, 0.5640},
    {"Optdigits", 0.1883, 0.1339, 0.8274, 0.0581, 0.6240},
    {"Vehicle", 0.2490, 0.1301, 0.5369, 0.1287, 0.1395},
    {"Yeast", 0.4469, 0.2668, 0.6413, 0.2093, 0.4247},
    {"Phoneme", 0.3364, 0.1723, 0.5511, 0.1641, 0.2115},
    {"German", 0.4265, 0.2802, 0.6866, 0.1736, 0.5541},
    {"Diabetes", 0.3808, 0.2461, 0.6638, 0.2279, 0.3020},
    {"Gamma", 0.5859, 0.1723, 0.4660, 0.1243, 0.4028},
}};

struct Vertex {
  int index;
  double fpr;
  double tpr;
  double slope;
  double threshold;
};

// Partial convex-hull vertex list of the Diabetes kNN validation ROC.
inline constexpr std::array<Vertex, 16> kDiabetesHull{{
    {17, 0.1226, 0.4965, 2.1593, 0.5106}, {18, 0.1585, 0.5656, 1.9255, 0.4514},
    {19, 0.1588, 0.5662, 1.8502, 0.4508}, {20, 0.1739, 0.5915, 1.6778, 0.4325},
    {21, 0.1816, 0.6038, 1.5962, 0.4211}, {28, 0.3554, 0.7958, 0.8326, 0.2617},
    {29, 0.3615, 0.8002, 0.7357, 0.2586}, {30, 0.3634, 0.8016, 0.6921, 0.2578},
    {31, 0.3997, 0.8265, 0.6881, 0.2334}, {32, 0.4860, 0.8832, 0.6554, 0.1781},
    {33, 0.4901, 0.8858, 0.6543, 0.1769}, {34, 0.5129, 0.8983, 0.5475, 0.1710},
    {35, 0.5158, 0.8998, 0.5113, 0.1701}, {36, 0.5389, 0.9104, 0.4605, 0.1632},
    {37, 0.5596, 0.9196, 0.4434, 0.1521}, {38, 0.5690, 0.9229, 0.3558, 0.1345},
}};

// Diabetes class sizes (negative / positive).
inline constexpr double kDiabetesNegatives = 500.0;
inline constexpr double kDiabetesPositives = 268.0;

}  // namespace golden
