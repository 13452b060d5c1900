#include "memsim/utm_codec.hpp"

#include <cctype>

namespace memsim::utm {

namespace {

void check_entry(const ProgramEntry& e) {
  if ((e.write != '0' && e.write != '1') || (e.move != 'L' && e.move != 'R') ||
      (e.next != 'A' && e.next != 'B' && e.next != 'H')) {
    throw Error("malformed program entry");
  }
}

void append_entry(std::string& out, char marker, const ProgramEntry& e) {
  check_entry(e);
  out += marker;
  out += e.write;
  out += static_cast<char>(std::tolower(e.move));
  out += static_cast<char>(std::tolower(e.next));
}

}  // namespace

std::string encode_tape(const TwoStateProgram& program, std::string_view input01) {
  std::string out;
  append_entry(out, 'P', program.a0);
  append_entry(out, 'Q', program.a1);
  append_entry(out, 'R', program.b0);
  append_entry(out, 'S', program.b1);
  out += "=a=";
  if (input01.empty()) {
    out += 'x';  // head on a blank cell
    return out;
  }
  for (std::size_t i = 0; i < input01.size(); ++i) {
    const char c = input01[i];
    if (c != '0' && c != '1') throw Error("program input must be over {0,1}");
    if (i == 0) {
      out += (c == '0') ? 'x' : 'y';
    } else {
      out += c;
    }
  }
  return out;
}

std::string machine_text(const TwoStateProgram& program, const std::string& name) {
  auto rule_line = [](char state, char read, const ProgramEntry& e) {
    check_entry(e);
    std::string line;
    line += state;
    line += ' ';
    line += read;
    line += " -> ";
    line += e.next;
    line += ' ';
    line += e.write;
    line += ' ';
    line += e.move;
    line += '\n';
    return line;
  };
  std::string out = "machine " + name + "\nblank 0\nstart A\nhalt H\n";
  out += rule_line('A', '0', program.a0);
  out += rule_line('A', '1', program.a1);
  out += rule_line('B', '0', program.b0);
  out += rule_line('B', '1', program.b1);
  return out;
}

std::string decode_tape(std::string_view utm_tape) {
  const auto first = utm_tape.find('=');
  const auto second = first == std::string_view::npos ? first : utm_tape.find('=', first + 1);
  if (second == std::string_view::npos) {
    throw Error("interpreter tape has no simulated region");
  }
  std::string out;
  for (std::size_t i = second + 1; i < utm_tape.size(); ++i) {
    switch (utm_tape[i]) {
      case '0':
      case '1':
        out += utm_tape[i];
        break;
      case 'x':
        out += '0';
        break;
      case 'y':
        out += '1';
        break;
      case '_':
        return out;
      default:
        throw Error(std::string("unexpected glyph '") + utm_tape[i] + "' in simulated region");
    }
  }
  return out;
}

TwoStateProgram demo_increment_program() {
  TwoStateProgram p;
  p.a0 = {'1', 'R', 'H'};  // first 0 becomes 1: done
  p.a1 = {'0', 'R', 'A'};  // clear a 1, carry right
  p.b0 = {'0', 'R', 'H'};  // B is unreachable filler to keep the table total
  p.b1 = {'1', 'R', 'H'};
  return p;
}

}  // namespace memsim::utm
