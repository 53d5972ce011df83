// Generated by scripts/gen-config.mjs at build time; edit API_BASE there
// via the API_BASE environment variable. Empty string means same-origin.
export const API_BASE = "";
