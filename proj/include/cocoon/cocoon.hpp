#pragma once

#include "cocoon/capabilities.hpp"
#include "cocoon/fwd.hpp"
#include "cocoon/label.hpp"
#include "cocoon/lib.hpp"
#include "cocoon/secret.hpp"
