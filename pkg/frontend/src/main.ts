// Browser entry point.
import { setupApp } from "./app.js";

setupApp();
