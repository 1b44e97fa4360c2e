#pragma once
#include <string>
#include <vector>

namespace graphnls {

void ensure_dir(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// least-squares slope of y against x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace graphnls
