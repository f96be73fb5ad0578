#include <array>

#include "taylor/ingest.hpp"

namespace taylor {

namespace {

struct Row {
    double real_gdp, cpi, interest_rate, stock_index;
};

// US: 1990Q1..2020Q1 (columns: real GDP, bn chained 2012 USD, CPI-U 1982-84=100, effective fed funds %, S&P 500 close)
constexpr std::array<Row, 121> kUsRows = {{
    {9358.289, 128.033, 8.248, 353.400},  // 1/1/90
    {9392.251, 129.300, 8.239, 339.940},  // 4/1/90
    {9398.499, 131.533, 8.160, 358.020},  // 7/1/90
    {9312.937, 133.767, 7.743, 306.050},  // 10/1/90
    {9269.367, 134.767, 6.430, 330.220},  // 1/1/91
    {9341.642, 135.567, 5.864, 375.220},  // 4/1/91
    {9388.845, 136.600, 5.645, 371.160},  // 7/1/91
    {9421.565, 137.733, 4.818, 387.860},  // 10/1/91
    {9534.346, 138.667, 4.024, 417.090},  // 1/1/92
    {9637.732, 139.733, 3.774, 403.690},  // 4/1/92
    {9732.979, 140.800, 3.259, 408.140},  // 7/1/92
    {9834.510, 142.033, 3.035, 417.800},  // 10/1/92
    {9850.973, 143.067, 3.042, 435.710},  // 1/1/93
    {9908.347, 144.100, 2.997, 451.670},  // 4/1/93
    {9955.641, 144.767, 3.058, 450.530},  // 7/1/93
    {10091.049, 145.967, 2.988, 458.930},  // 10/1/93
    {10188.954, 146.700, 3.209, 466.450},  // 1/1/94
    {10327.019, 147.533, 3.938, 445.770},  // 4/1/94
    {10387.382, 148.900, 4.485, 444.270},  // 7/1/94
    {10506.372, 149.767, 5.168, 462.690},  // 10/1/94
    {10543.644, 150.867, 5.803, 459.270},  // 1/1/95
    {10575.100, 152.100, 6.019, 500.710},  // 4/1/95
    {10665.060, 152.867, 5.797, 544.750},  // 7/1/95
    {10737.478, 153.700, 5.719, 584.410},  // 10/1/95
    {10817.896, 155.067, 5.371, 615.930},  // 1/1/96
    {10998.322, 156.400, 5.244, 645.500},  // 4/1/96
    {11096.976, 157.300, 5.306, 670.630},  // 7/1/96
    {11212.205, 158.667, 5.281, 687.310},  // 10/1/96
    {11284.587, 159.633, 5.278, 740.740},  // 1/1/97
    {11472.137, 160.000, 5.522, 757.120},  // 4/1/97
    {11615.636, 160.800, 5.535, 885.140},  // 7/1/97
    {11715.393, 161.667, 5.507, 947.280},  // 10/1/97
    {11832.486, 162.000, 5.519, 970.430},  // 1/1/98
    {11942.032, 162.533, 5.497, 1101.750},  // 4/1/98
    {12091.614, 163.367, 5.532, 1133.840},  // 7/1/98
    {12287.000, 164.133, 4.861, 1017.010},  // 10/1/98
    {12403.293, 164.733, 4.735, 1229.230},  // 1/1/99
    {12498.694, 165.967, 4.748, 1286.370},  // 4/1/99
    {12662.385, 167.200, 5.096, 1372.710},  // 7/1/99
    {12877.593, 168.433, 5.304, 1282.710},  // 10/1/99
    {12924.179, 170.100, 5.678, 1469.250},  // 1/1/00
    {13160.842, 171.433, 6.272, 1498.580},  // 4/1/00
    {13178.419, 173.000, 6.519, 1454.600},  // 7/1/00
    {13260.506, 174.233, 6.475, 1436.510},  // 10/1/00
    {13222.690, 175.900, 5.597, 1320.280},  // 1/1/01
    {13299.984, 177.133, 4.327, 1160.330},  // 4/1/01
    {13244.784, 177.633, 3.502, 1224.420},  // 7/1/01
    {13280.859, 177.500, 2.130, 1040.940},  // 10/1/01
    {13397.002, 178.067, 1.733, 1148.080},  // 1/1/02
    {13478.152, 179.467, 1.752, 1147.390},  // 4/1/02
    {13538.072, 180.433, 1.741, 989.810},  // 7/1/02
    {13559.032, 181.500, 1.444, 815.280},  // 10/1/02
    {13634.253, 183.367, 1.250, 879.820},  // 1/1/03
    {13751.543, 183.067, 1.247, 848.180},  // 4/1/03
    {13985.073, 184.433, 1.017, 974.500},  // 7/1/03
    {14145.645, 185.133, 0.997, 995.970},  // 10/1/03
    {14221.147, 186.700, 1.002, 1111.920},  // 1/1/04
    {14329.523, 188.167, 1.011, 1126.210},  // 4/1/04
    {14464.984, 189.367, 1.431, 1140.840},  // 7/1/04
    {14609.876, 191.400, 1.950, 1114.580},  // 10/1/04
    {14771.602, 192.367, 2.469, 1211.920},  // 1/1/05
    {14839.782, 193.667, 2.942, 1180.590},  // 4/1/05
    {14972.054, 196.600, 3.460, 1191.330},  // 7/1/05
    {15066.597, 198.433, 3.978, 1228.810},  // 10/1/05
    {15267.026, 199.467, 4.454, 1248.290},  // 1/1/06
    {15302.705, 201.267, 4.908, 1294.830},  // 4/1/06
    {15326.368, 203.167, 5.245, 1270.200},  // 7/1/06
    {15456.928, 202.333, 5.243, 1335.850},  // 10/1/06
    {15493.328, 204.317, 5.255, 1418.300},  // 1/1/07
    {15582.085, 206.631, 5.252, 1420.860},  // 4/1/07
    {15666.738, 207.939, 5.074, 1503.350},  // 7/1/07
    {15761.967, 210.490, 4.496, 1526.750},  // 10/1/07
    {15671.383, 212.770, 3.181, 1468.360},  // 1/1/08
    {15752.308, 215.538, 2.085, 1322.700},  // 4/1/08
    {15667.032, 218.861, 1.941, 1280.000},  // 7/1/08
    {15328.027, 213.849, 0.505, 1166.360},  // 10/1/08
    {15155.940, 212.378, 0.184, 903.250},  // 1/1/09
    {15134.117, 213.507, 0.178, 797.870},  // 4/1/09
    {15189.222, 215.344, 0.154, 919.320},  // 7/1/09
    {15356.058, 217.030, 0.118, 1057.080},  // 10/1/09
    {15415.145, 217.374, 0.134, 1115.100},  // 1/1/10
    {15557.277, 217.297, 0.192, 1169.430},  // 4/1/10
    {15671.967, 217.934, 0.189, 1030.710},  // 7/1/10
    {15750.625, 219.699, 0.190, 1141.200},  // 10/1/10
    {15712.754, 222.044, 0.155, 1257.640},  // 1/1/11
    {15825.096, 224.568, 0.095, 1325.830},  // 4/1/11
    {15820.700, 226.033, 0.084, 1320.640},  // 7/1/11
    {16004.107, 227.047, 0.074, 1131.420},  // 10/1/11
    {16129.418, 228.326, 0.104, 1257.610},  // 1/1/12
    {16198.807, 228.808, 0.152, 1408.470},  // 4/1/12
    {16220.667, 229.841, 0.144, 1362.160},  // 7/1/12
    {16239.138, 231.369, 0.161, 1440.670},  // 10/1/12
    {16382.964, 232.299, 0.144, 1426.190},  // 1/1/13
    {16403.180, 232.045, 0.116, 1569.190},  // 4/1/13
    {16531.685, 233.300, 0.085, 1606.280},  // 7/1/13
    {16663.649, 234.163, 0.086, 1681.550},  // 10/1/13
    {16616.540, 235.621, 0.072, 1848.360},  // 1/1/14
    {16841.475, 236.872, 0.091, 1872.340},  // 4/1/14
    {17047.098, 237.478, 0.089, 1960.230},  // 7/1/14
    {17143.038, 236.888, 0.101, 1972.290},  // 10/1/14
    {17277.580, 235.355, 0.113, 2058.900},  // 1/1/15
    {17405.669, 236.960, 0.126, 2067.890},  // 4/1/15
    {17463.222, 237.855, 0.135, 2063.110},  // 7/1/15
    {17468.902, 237.837, 0.161, 1920.030},  // 10/1/15
    {17556.839, 237.777, 0.360, 2043.940},  // 1/1/16
    {17639.417, 239.473, 0.369, 2059.740},  // 4/1/16
    {17735.074, 240.591, 0.395, 2098.860},  // 7/1/16
    {17824.231, 242.115, 0.448, 2168.270},  // 10/1/16
    {17925.256, 243.822, 0.699, 2238.830},  // 1/1/17
    {18021.048, 244.054, 0.947, 2362.720},  // 4/1/17
    {18163.558, 245.359, 1.154, 2423.410},  // 7/1/17
    {18322.464, 247.250, 1.205, 2519.360},  // 10/1/17
    {18438.254, 249.235, 1.447, 2673.610},  // 1/1/18
    {18598.135, 250.591, 1.737, 2640.870},  // 4/1/18
    {18732.720, 251.883, 1.926, 2718.370},  // 7/1/18
    {18783.548, 252.697, 2.220, 2913.980},  // 10/1/18
    {18927.281, 253.275, 2.402, 2506.850},  // 1/1/19
    {19021.860, 255.171, 2.397, 2834.400},  // 4/1/19
    {19121.112, 256.325, 2.192, 2941.760},  // 7/1/19
    {19221.970, 257.832, 1.646, 2976.740},  // 10/1/19
    {18974.702, 258.608, 1.255, 3230.780},  // 1/1/20
}};

// UK: 1990Q1..2020Q1 (columns: real GDP, mn chained 2010 GBP, CPI 2015=100, Bank Rate %, FTSE 100 close)
constexpr std::array<Row, 121> kUkRows = {{
    {266386.8, 52.8000, 14.88, 2422.7},  // 1990-01-01
    {267755.2, 54.8667, 14.88, 2247.9},  // 1990-04-01
    {264959.8, 55.7000, 14.88, 2374.7},  // 1990-07-01
    {264048.2, 56.8667, 13.88, 1990.3},  // 1990-10-01
    {263277.6, 57.2333, 13.05, 2143.4},  // 1991-01-01
    {262945.7, 59.1333, 11.55, 2456.6},  // 1991-04-01
    {262371.5, 59.7667, 10.71, 2414.7},  // 1991-07-01
    {262827.3, 60.5333, 10.38, 2621.7},  // 1991-10-01
    {262846.3, 60.8000, 10.38, 2493.1},  // 1992-01-01
    {262536.1, 62.0667, 10.05, 2440.1},  // 1992-04-01
    {264208.2, 62.1333, 9.55, 2521.2},  // 1992-07-01
    {266048.6, 62.5333, 7.21, 2553},  // 1992-10-01
    {267973.1, 62.7000, 5.88, 2846.5},  // 1993-01-01
    {269301.6, 63.5333, 5.88, 2878.7},  // 1993-04-01
    {271423.3, 63.7000, 5.88, 2900},  // 1993-07-01
    {273224.8, 63.9333, 5.55, 3037.5},  // 1993-10-01
    {276437.1, 64.2000, 5.21, 3418.4},  // 1994-01-01
    {279663.0, 65.0333, 5.13, 3086.4},  // 1994-04-01
    {282859.0, 65.0000, 5.30, 2919.2},  // 1994-07-01
    {284574.6, 65.2667, 5.80, 3026.3},  // 1994-10-01
    {285782.8, 65.7333, 6.46, 3065.5},  // 1995-01-01
    {286839.1, 66.6333, 6.63, 3137.9},  // 1995-04-01
    {289489.8, 66.9000, 6.63, 3314.6},  // 1995-07-01
    {289862.4, 67.2333, 6.55, 3508.2},  // 1995-10-01
    {292524.0, 67.6667, 6.07, 3689.3},  // 1996-01-01
    {293565.8, 68.5333, 5.86, 3699.7},  // 1996-04-01
    {296152.3, 68.6667, 5.69, 3711},  // 1996-07-01
    {298434.0, 69.2333, 5.94, 3953.7},  // 1996-10-01
    {302554.3, 69.3000, 5.94, 4118.5},  // 1997-01-01
    {305166.1, 69.9333, 6.23, 4312.9},  // 1997-04-01
    {307409.0, 70.2667, 6.92, 4604.6},  // 1997-07-01
    {311059.9, 70.6333, 7.17, 5244.2},  // 1997-10-01
    {313759.4, 70.6000, 7.25, 5135.5},  // 1998-01-01
    {316527.7, 71.3667, 7.33, 5932.2},  // 1998-04-01
    {318689.1, 71.4333, 7.50, 5832.5},  // 1998-07-01
    {321906.0, 71.8333, 6.75, 5064.4},  // 1998-10-01
    {323936.3, 72.0000, 5.67, 5882.6},  // 1999-01-01
    {324604.6, 72.7000, 5.17, 6295.3},  // 1999-04-01
    {330573.4, 72.6000, 5.08, 6318.5},  // 1999-07-01
    {335336.7, 72.9333, 5.42, 6029.8},  // 1999-10-01
    {337891.6, 72.8000, 5.92, 6930.2},  // 2000-01-01
    {339782.6, 73.4667, 6.00, 6540.2},  // 2000-04-01
    {340711.4, 73.4667, 6.00, 6312.7},  // 2000-07-01
    {341247.7, 73.9333, 6.00, 6294.2},  // 2000-10-01
    {346129.4, 73.7000, 5.83, 6222.5},  // 2001-01-01
    {349025.2, 74.7667, 5.33, 5633.7},  // 2001-04-01
    {351806.2, 74.7667, 5.00, 5642.5},  // 2001-07-01
    {353112.1, 74.9333, 4.17, 4903.4},  // 2001-10-01
    {354675.7, 75.0000, 4.00, 5217.4},  // 2002-01-01
    {356471.8, 75.7333, 4.00, 5271.8},  // 2002-04-01
    {359192.1, 75.8000, 4.00, 4656.4},  // 2002-07-01
    {362277.8, 76.1667, 4.00, 3721.8},  // 2002-10-01
    {364682.5, 76.1333, 3.83, 3940.4},  // 2003-01-01
    {368096.5, 76.7667, 3.75, 3613.3},  // 2003-04-01
    {371889.4, 76.8000, 3.50, 4031.2},  // 2003-07-01
    {375029.4, 77.1667, 3.67, 4091.3},  // 2003-10-01
    {377068.8, 77.1667, 3.92, 4476.9},  // 2004-01-01
    {378418.1, 77.8000, 4.25, 4385.7},  // 2004-04-01
    {379045.7, 77.8333, 4.67, 4464.1},  // 2004-07-01
    {380292.8, 78.3333, 4.75, 4570.8},  // 2004-10-01
    {383488.9, 78.5333, 4.75, 4814.3},  // 2005-01-01
    {388256.7, 79.3000, 4.75, 4894.4},  // 2005-04-01
    {392679.0, 79.7000, 4.58, 5113.2},  // 2005-07-01
    {398569.2, 80.1000, 4.50, 5477.7},  // 2005-10-01
    {400160.9, 80.2000, 4.50, 5618.8},  // 2006-01-01
    {401167.4, 81.2333, 4.50, 5964.6},  // 2006-04-01
    {401579.8, 81.7333, 4.67, 5833.4},  // 2006-07-01
    {403666.2, 82.2667, 4.92, 5960.8},  // 2006-10-01
    {407433.8, 82.4333, 5.25, 6220.8},  // 2007-01-01
    {409959.7, 83.3000, 5.42, 6308},  // 2007-04-01
    {413142.2, 83.3333, 5.75, 6607.9},  // 2007-07-01
    {415088.4, 84.1333, 5.67, 6466.8},  // 2007-10-01
    {417340.2, 84.5333, 5.33, 6456.9},  // 2008-01-01
    {415025.1, 86.1000, 5.00, 5702.1},  // 2008-04-01
    {408535.3, 87.0667, 5.00, 5625.9},  // 2008-07-01
    {400097.6, 87.2333, 3.17, 4902.45},  // 2008-10-01
    {393106.8, 87.0333, 1.00, 4434.17},  // 2009-01-01
    {392150.0, 87.8333, 0.50, 3926.14},  // 2009-04-01
    {392428.5, 88.2000, 0.50, 4249.21},  // 2009-07-01
    {393606.0, 88.6333, 0.50, 5133.9},  // 2009-10-01
    {396113.8, 89.0667, 0.50, 5412.88},  // 2010-01-01
    {400083.1, 90.0667, 0.50, 5679.64},  // 2010-04-01
    {402736.5, 90.2667, 0.50, 4916.87},  // 2010-07-01
    {402991.5, 91.0667, 0.50, 5548.62},  // 2010-10-01
    {405528.3, 92.2333, 0.50, 5899.94},  // 2011-01-01
    {405931.6, 93.4333, 0.50, 5908.76},  // 2011-04-01
    {407190.5, 93.9667, 0.50, 5945.71},  // 2011-07-01
    {407947.5, 94.7333, 0.50, 5128.48},  // 2011-10-01
    {410572.9, 95.1000, 0.50, 5572.28},  // 2012-01-01
    {410249.1, 95.8000, 0.50, 5768.45},  // 2012-04-01
    {415235.8, 96.0667, 0.50, 5571.15},  // 2012-07-01
    {414597.3, 97.0333, 0.50, 5742.07},  // 2012-10-01
    {417269.7, 97.4333, 0.50, 5897.81},  // 2013-01-01
    {419506.2, 98.0667, 0.50, 6411.74},  // 2013-04-01
    {423473.7, 98.3667, 0.50, 6215.47},  // 2013-07-01
    {425721.9, 98.9333, 0.50, 6462.22},  // 2013-10-01
    {428527.3, 99.0333, 0.50, 6749.09},  // 2014-01-01
    {431337.1, 99.6667, 0.50, 6598.37},  // 2014-04-01
    {433821.4, 99.8333, 0.50, 6743.94},  // 2014-07-01
    {436247.9, 99.9667, 0.50, 6622.72},  // 2014-10-01
    {438545.8, 99.4333, 0.50, 6566.09},  // 2015-01-01
    {441673.2, 100.0333, 0.50, 6773.04},  // 2015-04-01
    {443572.3, 100.1667, 0.50, 6520.98},  // 2015-07-01
    {446887.7, 100.3333, 0.50, 6061.61},  // 2015-10-01
    {447631.1, 100.1333, 0.50, 6242.32},  // 2016-01-01
    {450006.9, 100.8000, 0.50, 6174.9},  // 2016-04-01
    {452035.4, 101.2000, 0.33, 6504.33},  // 2016-07-01
    {454971.9, 101.8667, 0.25, 6899.33},  // 2016-10-01
    {457594.5, 102.3000, 0.25, 7142.83},  // 2017-01-01
    {458744.9, 103.4000, 0.25, 7322.92},  // 2017-04-01
    {460306.7, 103.9333, 0.25, 7312.72},  // 2017-07-01
    {462144.4, 104.7000, 0.5, 7372.76},  // 2017-10-01
    {462419.3, 104.8333, 0.5, 7687.77},  // 2018-01-01
    {464854.8, 105.7667, 0.5, 7056.61},  // 2018-04-01
    {467584.2, 106.3333, 0.5, 7636.93},  // 2018-07-01
    {468585.3, 106.9000, 0.75, 7510.2},  // 2018-10-01
    {471727.1, 106.7333, 0.75, 6728.13},  // 2019-01-01
    {470975.6, 107.8000, 0.75, 7279.19},  // 2019-04-01
    {473448.1, 108.2333, 0.75, 7425.63},  // 2019-07-01
    {473542.2, 108.4333, 0.75, 7408.21},  // 2019-10-01
    {464187.4, 108.5000, 0.25, 7542.44},  // 2020-01-01
}};

template <std::size_t N>
Dataset to_dataset(std::string country, const std::array<Row, N>& rows) {
    std::vector<double> gdp, cpi, rate, stock;
    for (const Row& r : rows) {
        gdp.push_back(r.real_gdp);
        cpi.push_back(r.cpi);
        rate.push_back(r.interest_rate);
        stock.push_back(r.stock_index);
    }
    const Quarter start(1990, 1);
    return Dataset(std::move(country), {Series("real_gdp", start, std::move(gdp)), Series("cpi", start, std::move(cpi)),
                                         Series("interest_rate", start, std::move(rate)),
                                         Series("stock_index", start, std::move(stock))});
}

}  // namespace

Dataset embedded_dataset(Country country) {
    return country == Country::us ? to_dataset("us", kUsRows) : to_dataset("uk", kUkRows);
}

}  // namespace taylor
