#pragma once

#include "nilprob/numtheory.hpp"
#include "nilprob/perm.hpp"
#include "nilprob/element_table.hpp"
#include "nilprob/group.hpp"
#include "nilprob/nilpotency.hpp"
#include "nilprob/structure.hpp"
#include "nilprob/fraction.hpp"
#include "nilprob/field.hpp"
#include "nilprob/catalog.hpp"
#include "nilprob/nu.hpp"
#include "nilprob/expected_values.hpp"
