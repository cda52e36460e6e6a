#include "visco/field.hpp"

// Header-only templates; this unit keeps the explicit instantiations in one place.
namespace visco {
template struct SpectralField<1>;
template struct SpectralField<3>;
template struct SpectralField<9>;
template struct PhysicalField<1>;
template struct PhysicalField<3>;
template struct PhysicalField<9>;
}  // namespace visco
