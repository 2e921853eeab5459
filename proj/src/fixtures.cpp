#include "qtgi/fixtures.hpp"

#include "qtgi/errors.hpp"
#include "qtgi/qt_io.hpp"

namespace qtgi {

namespace {

using SliceText = std::vector<std::vector<const char*>>;

QTensor tensor(const std::vector<SliceText>& slices) {
  std::vector<QMatrix> mats;
  for (const auto& s : slices) {
    QMatrix m(s.size(), s.front().size());
    for (std::size_t r = 0; r < s.size(); ++r) {
      for (std::size_t c = 0; c < s[r].size(); ++c) {
        m(r, c) = parse_quaternion_literal(s[r][c]);
      }
    }
    mats.push_back(std::move(m));
  }
  return QTensor::from_slices(mats);
}

ReferenceExample moore_penrose_example() {
  ReferenceExample ex;
  ex.name = "mp";
  ex.provenance =
      "Reference example 1: Moore-Penrose inverse of a 2x3x4 quaternion tensor.\n"
      "Values transcribed as printed (4 decimals). In slice 1, entry (2,2) is printed\n"
      "as '0.0270+0.0074iv+0.0074j-0.0613k'; the stray 'v' is dropped (read as i).";
  ex.inputs.emplace_back("A", tensor({
                                  {{"i", "j", "2i-j"}, {"k", "2+i", "3"}},
                                  {{"1+i", "2", "1+i+j+k"}, {"k", "j+3k", "1+k"}},
                                  {{"1+3j", "3j-k", "5"}, {"2+i+j+2k", "i+j", "k"}},
                                  {{"2k", "i-j-k", "-2j"}, {"3j-k", "i+k", "3i-j"}},
                              }));
  ex.printed_name = "pinv";
  ex.printed = tensor({
      {{"0.0588-0.0539i-0.0196j-0.0049k", "-0.0245-0.0196i-0.0049j+0.0294k"},
       {"-0.0221+0.0025i+0.0368j-0.0662k", "0.0270+0.0074i+0.0074j-0.0613k"},
       {"-0.0735-0.0588i-0.0686j+0.0196k", "0.0490-0.0980i-0.0392j+0.0833k"}},
      {{"0.0526-0.0395i-0.0175j-0.0614k", "-0.0175-0.0219i-0.0263j+0.0175k"},
       {"-0.0461-0.0154i+0.0329j-0.0241k", "-0.0811-0.0066i-0.0110j+0.0461k"},
       {"0.0197-0.0110i+0.0241j+0.0855k", "0.1162-0.0636i-0.0022j-0.0373k"}},
      {{"0.0238-0.0087i-0.0389j-0.0325k", "0.0198+0.0246i+0.0167j+0.0381k"},
       {"0.0329-0.0115i-0.0329j-0.0202k", "-0.0448-0.0044i+0.0179j-0.0258k"},
       {"0.0111-0.0214i+0.0349j-0.0246k", "-0.0595+0.0333i-0.0071j+0.0651k"}},
      {{"0.0452-0.0393i+0.0357j+0.0083k", "0.0310+0.0202i+0.0548j-0.0464k"},
       {"0.0286+0.0512i-0.0679j-0.0643k", "-0.0262+0.0607i-0.0298j-0.0238k"},
       {"0.0226+0.0417i-0.0107j+0.0131k", "-0.0083+0.0012i+0.0679j-0.0512k"}},
  });
  return ex;
}

ReferenceExample drazin_example() {
  ReferenceExample ex;
  ex.name = "drazin";
  ex.provenance =
      "Reference example 2: Drazin inverse of a 3x3x4 quaternion tensor, computed as the\n"
      "right inverse along (A^k, A^k). Values transcribed as printed (4 decimals).";
  ex.inputs.emplace_back("A", tensor({
                                  {{"1+i", "j", "3"}, {"k", "1+j", "i+j"}, {"2", "j-k", "1"}},
                                  {{"2k", "i+k", "-k"}, {"i+j+2k", "2+i", "i-j"}, {"3", "2k", "i+k"}},
                                  {{"j", "i+k", "2+i"}, {"1+k", "j", "2-j"}, {"-i", "1-k", "4+i-k"}},
                                  {{"2i+k", "1", "2+3i+j+2k"}, {"5i+2j", "-3-i-2k", "1-i"}, {"2j", "-i+2j+k", "3+2k"}},
                              }));
  ex.printed_name = "drazin";
  ex.printed = tensor({
      {{"0.0342+0.0513i-0.0940j-0.0256k", "0.0726-0.1496i+0.0385j-0.0470k", "-0.1581+0.0214i+0.0299j-0.0556k"},
       {"0.0470+0.0983i+0.0556j-0.0556k", "-0.0128-0.1581i-0.1838j+0.0299k", "-0.0214-0.0043i-0.0385j-0.1410k"},
       {"-0.0556+0.0556i+0.0385j+0.0812k", "-0.0214+0.0043i-0.0812j-0.1838k", "-0.0897+0.1068i+0.2350j+0.0641k"}},
      {{"0.0813-0.0255i+0.0222j-0.0539k", "0.0293+0.0927i+0.0317j+0.0241k", "0.0284+0.0804i-0.0099j+0.0270k"},
       {"0.0137-0.0407i+0.0038j-0.0345k", "0.0433-0.1411i-0.0707j-0.0404k", "0.0714-0.0842i+0.0719j+0.0288k"},
       {"-0.0440+0.0293i+0.0066j-0.0005k", "-0.0463+0.0648i-0.0596j-0.0468k", "-0.1132+0.0158i-0.0173j-0.0494k"}},
      {{"0.0276-0.0104i-0.0136j-0.0548k", "0.0485+0.0318i-0.0506j-0.0929k", "-0.1028-0.0167i-0.0423j-0.0276k"},
       {"0.0211+0.0143i-0.0206j-0.0420k", "0.0451+0.0655i+0.0029j+0.1009k", "-0.0271-0.0438i-0.0151j+0.0037k"},
       {"-0.0550+0.0462i+0.0013j-0.0284k", "-0.0412+0.1069i-0.1080j-0.0777k", "-0.1135+0.0222i-0.0592j+0.0827k"}},
      {{"0.0132-0.0264i-0.0184j-0.0084k", "0.0159-0.0167i+0.0125j-0.0194k", "0.0437-0.0159i+0.0138j+0.0234k"},
       {"-0.0030+0.0024i-0.0092j-0.0056k", "-0.0191+0.0059i+0.0238j-0.0097k", "-0.0657+0.0166i+0.0205j+0.0330k"},
       {"0.0135-0.0270i+0.0110j+0.0417k", "0.0548+0.0189i+0.0183j-0.0231k", "-0.0080-0.0401i+0.0298j-0.0429k"}},
  });
  return ex;
}

ReferenceExample inverse_along_example() {
  ReferenceExample ex;
  ex.name = "inv-along";
  ex.provenance =
      "Reference example 3: right inverse of A along (B, C), A 3x3x4, B 3x2x4, C 3x3x4.\n"
      "Values transcribed as printed (4 decimals). In slice 1, entry (1,1) is printed with\n"
      "five decimals as '0.01278'; it is stored as 0.0128. In C slice 3, entry (2,3) is\n"
      "printed as 'j+2k' with the j in upright type; it is read as the unit j.";
  ex.inputs.emplace_back("A", tensor({
                                  {{"1+k", "i+2j", "-i-2k"}, {"2", "2+i-k", "-2i-j"}, {"i+j", "2k", "1"}},
                                  {{"3-i-k", "i", "1+i"}, {"3j+2k", "-3j-k", "1"}, {"j", "2+i", "2i+2j"}},
                                  {{"i", "j", "i-j"}, {"j+3k", "2", "1+3i"}, {"2j-k", "1+i", "j"}},
                                  {{"i+j", "k", "2+i"}, {"3i", "1", "2+2k"}, {"2i-2j", "2j-k", "2j"}},
                              }));
  ex.inputs.emplace_back("B", tensor({
                                  {{"1", "i+j"}, {"k", "1-j"}, {"i+j+2k", "2-i"}},
                                  {{"2i+j", "-i+j-2k"}, {"2", "j+k"}, {"i", "-2j"}},
                                  {{"k", "i+k"}, {"1-2j", "2i+j"}, {"1-i-k", "j"}},
                                  {{"1+i+j-2k", "2i"}, {"j-k", "3"}, {"2+k", "k"}},
                              }));
  ex.inputs.emplace_back("C", tensor({
                                  {{"1", "i+j", "k"}, {"j-k", "2+i", "i-j"}, {"3-j", "j+k", "i"}},
                                  {{"2+i-j", "i", "j"}, {"2i-j", "3+k", "3i"}, {"2j+k", "1", "2i-k"}},
                                  {{"i", "j-k", "3+2k"}, {"1+j", "5", "j+2k"}, {"j", "i+j+k", "1"}},
                                  {{"k", "1+i", "j+k"}, {"2-i-2j+3k", "2j-k", "i+k"}, {"3+i-2j", "i", "j"}},
                              }));
  ex.printed_name = "inv_along";
  ex.printed = tensor({
      {{"0.0128+0.0149i-0.0156j+0.1356k", "0.0588+0.0279i-0.0269j-0.0939k", "0.0237+0.0310i-0.0553j+0.0163k"},
       {"0.1406-0.0375i-0.0301j-0.0296k", "-0.0918+0.0275i-0.1121j+0.0527k", "0.1054-0.0506i-0.0246j+0.0004k"},
       {"-0.0730-0.0388i-0.0003j-0.0858k", "-0.0004+0.0148i-0.0493j+0.1090k", "0.0226+0.0194i+0.0202j+0.0082k"}},
      {{"-0.0270-0.0271i-0.0798j-0.1330k", "0.1046-0.0362i-0.0252j+0.0646k", "0.0486+0.0009i+0.0381j+0.0431k"},
       {"-0.0364-0.0271i-0.0900j+0.0369k", "0.1031-0.0490i+0.0275j+0.0072k", "0.0660-0.0221i-0.0491j-0.0041k"},
       {"0.0314+0.0998i-0.0239j+0.0646k", "-0.0193-0.0337i-0.0987j-0.0014k", "-0.0105+0.0540i-0.0165j-0.0092k"}},
      {{"0.1102-0.0758i+0.0706j-0.0288k", "0.0259+0.0098i-0.0635j+0.0477k", "0.1233-0.0249i+0.0981j+0.0255k"},
       {"-0.1346-0.0269i+0.0370j+0.1605k", "0.1292-0.0017i-0.0685j-0.0711k", "0.0159-0.0380i+0.0123j-0.0962k"},
       {"-0.0269-0.0768i-0.0987j+0.0685k", "0.0318+0.0237i-0.0124j-0.0181k", "0.0274-0.1399i-0.0648j+0.0646k"}},
      {{"0.0528-0.0211i-0.0203j+0.0797k", "0.0774+0.0347i+0.0206j-0.1083k", "0.0606-0.0479i+0.1029j+0.0408k"},
       {"0.0763-0.1252i-0.0851j-0.1742k", "-0.0769-0.0066i-0.0789j+0.0786k", "-0.0062-0.1280i+0.0197j+0.0126k"},
       {"-0.0318-0.0723i-0.1126j-0.0060k", "0.0250-0.0268i-0.0392j+0.0876k", "0.0167-0.1183i-0.0480j+0.0140k"}},
  });
  return ex;
}

}  // namespace

const QTensor& ReferenceExample::input(std::string_view key) const {
  for (const auto& [name, t] : inputs) {
    if (name == key) {
      return t;
    }
  }
  throw Error("example '" + this->name + "' has no input '" + std::string(key) + "'");
}

const std::vector<std::string>& reference_example_names() {
  static const std::vector<std::string> names{"mp", "drazin", "inv-along"};
  return names;
}

const ReferenceExample& reference_example(std::string_view name) {
  static const std::vector<ReferenceExample> all{moore_penrose_example(), drazin_example(), inverse_along_example()};
  for (const auto& ex : all) {
    if (ex.name == name) {
      return ex;
    }
  }
  throw Error("unknown example '" + std::string(name) + "' (expected mp, drazin or inv-along)");
}

}  // namespace qtgi
