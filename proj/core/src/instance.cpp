#include "depdetect/instance.hpp"

#include <string>

namespace depdetect {

void validate_instance(const Instance& inst) {
  for (std::size_t i = 0; i < inst.basis.size(); ++i) {
    const PointQ& P = inst.basis[i];
    const std::string tag = "basis[" + std::to_string(i) + "]";
    if (P.infinity) throw InvalidInstance(tag + " is the point at infinity");
    if (!inst.E.contains(P)) throw InvalidInstance(tag + " not on curve");
    if (inst.E.torsion_info(P).torsion)
      throw InvalidInstance(tag + " is torsion");
  }
  if (inst.candidate.infinity) return;  // trivially dependent
  if (!inst.E.contains(inst.candidate))
    throw InvalidInstance("candidate not on curve");
  if (inst.E.torsion_info(inst.candidate).torsion)
    throw InvalidInstance("candidate is torsion (and not infinity)");
}

}  // namespace depdetect
