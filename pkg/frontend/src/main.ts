import { App } from "./app.js";

function bootstrap() {
  const root = document.getElementById("app");
  const settings = document.getElementById("settings-form") as HTMLFormElement | null;
  if (!root || !settings) throw new Error("missing #app or #settings-form");

  const app = new App(root);
  settings.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(settings);
    app.configure({
      baseUrl: String(data.get("server") ?? ""),
      token: String(data.get("token") ?? ""),
    });
    app.startPolling();
  });
  app.redraw();
}

bootstrap();
