/** Browser entry point: one keypad session against the serving host. */

import { mountKeypad } from "./app.js";
import { ToneFeedback } from "./audio.js";
import { HttpKeypadService } from "./client.js";

const params = new URLSearchParams(window.location.search);
const language = params.get("lang") ?? "en";
const grade = Number(params.get("grade") ?? "1");

window.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("app");
  if (root) {
    void mountKeypad(root, new HttpKeypadService(), new ToneFeedback(), { language, grade });
  }
});
