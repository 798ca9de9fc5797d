#pragma once

#include <string>
#include <vector>

namespace aggan {

std::string fmt_full(double v);               // 17 significant digits
std::string fmt_g(double v, int digits = 9);  // general format

std::vector<std::string> split_csv_line(const std::string& line);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 if absent
};

CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const CsvTable& table);

}  // namespace aggan
