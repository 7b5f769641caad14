# Copyright 2026 The convwer Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Convention-aware WER evaluation.

Everything lives in the compiled extension; this package only re-exports
it under stable names.
"""

from convwer._core import (
    __version__,
    align,
    chat_import,
    delta_eid,
    derive,
    derive_manifest,
    eid,
    evaluate,
    hermeneutical_gap,
    inter_reference_distance,
    parse_chat,
    policies,
    tokenize,
    validate,
    wer,
    wer_range,
)

__all__ = [
    "__version__",
    "align",
    "chat_import",
    "delta_eid",
    "derive",
    "derive_manifest",
    "eid",
    "evaluate",
    "hermeneutical_gap",
    "inter_reference_distance",
    "parse_chat",
    "policies",
    "tokenize",
    "validate",
    "wer",
    "wer_range",
]
