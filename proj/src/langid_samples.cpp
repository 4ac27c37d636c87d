// Sample text for the built-in language profiles. Written for this project;
// everyday dialogue and narration in the register of subtitles.

#include "apekit/langid.hpp"

namespace apekit {

namespace {

constexpr std::string_view kEnglish = R"(
Where are you going? I told you to wait for me at the station. It is not safe to walk
alone through the city at night. I know, I know, but I could not stay there any longer.
The train was late again and the people were looking at me. What happened to your phone?
I think I left it in the car. We have to go back and find it before they do.
Thank you so much for everything you have done for our family. Please come in and sit down.
Would you like something to drink? There is coffee in the kitchen and some tea as well.
She was the most beautiful woman he had ever seen, and he could not stop thinking about her.
They walked along the river until the sun went down behind the old church on the hill.
Nobody believed him when he said that he had seen the ghost of his grandfather.
I am sorry, but I cannot help you with that. You should ask the doctor tomorrow morning.
Why would anyone want to hurt her? She never did anything wrong to anybody in this town.
Listen to me carefully. If something goes wrong, you run and you do not look back.
Have you ever thought about what you want to do with the rest of your life?
This is the best day of my life. I never thought that we would win the championship.
The weather will be cold and windy this weekend, with heavy rain in the northern areas.
He opened the door slowly and looked inside, but the room was dark and completely empty.
We should have called the police when we had the chance. Now it is too late for that.
My brother works at the hospital, and my sister is still studying at the university.
Do not worry about the money. We will figure something out together, like we always do.
I would rather stay at home and watch a movie than go to another boring party with them.
The children were playing in the garden while their parents were preparing the dinner.
Can you hear that? Something is moving in the bushes over there. Stay behind me.
If you really loved me, you would tell me the truth about what happened that night.
Everything is going to be fine. Just breathe, close your eyes and count to ten.
Which one of you took my keys? They were right here on the table a minute ago.
Our teacher said that the history exam would be much harder than the last one.
It's getting late. You should get some sleep, because tomorrow will be a long day.
Those were the happiest years of my life, and I will never forget them.
)";

constexpr std::string_view kGerman = R"(
Wohin gehst du? Ich habe dir gesagt, dass du am Bahnhof auf mich warten sollst. Es ist nicht
sicher, nachts allein durch die Stadt zu laufen. Ich weiß, ich weiß, aber ich konnte dort nicht
länger bleiben. Der Zug hatte wieder Verspätung und die Leute haben mich angestarrt.
Was ist mit deinem Handy passiert? Ich glaube, ich habe es im Auto gelassen. Wir müssen
zurückgehen und es finden, bevor sie es tun. Vielen Dank für alles, was Sie für unsere Familie
getan haben. Bitte kommen Sie herein und setzen Sie sich. Möchten Sie etwas trinken?
In der Küche gibt es Kaffee und auch etwas Tee. Sie war die schönste Frau, die er je gesehen
hatte, und er konnte nicht aufhören, an sie zu denken. Sie gingen am Fluss entlang, bis die
Sonne hinter der alten Kirche auf dem Hügel unterging. Niemand glaubte ihm, als er sagte,
dass er den Geist seines Großvaters gesehen hatte. Es tut mir leid, aber dabei kann ich dir
nicht helfen. Du solltest morgen früh den Arzt fragen. Warum sollte ihr jemand wehtun wollen?
Sie hat in dieser Stadt nie jemandem etwas getan. Hör mir genau zu. Wenn etwas schiefgeht,
rennst du weg und schaust nicht zurück. Hast du jemals darüber nachgedacht, was du mit dem
Rest deines Lebens machen willst? Das ist der schönste Tag meines Lebens. Ich hätte nie
gedacht, dass wir die Meisterschaft gewinnen würden. Das Wetter wird an diesem Wochenende
kalt und windig, mit starkem Regen im Norden. Er öffnete langsam die Tür und schaute hinein,
aber das Zimmer war dunkel und völlig leer. Wir hätten die Polizei rufen sollen, als wir die
Gelegenheit hatten. Jetzt ist es dafür zu spät. Mein Bruder arbeitet im Krankenhaus, und meine
Schwester studiert noch an der Universität. Mach dir keine Sorgen um das Geld. Wir werden
gemeinsam eine Lösung finden, so wie immer. Ich würde lieber zu Hause bleiben und einen Film
schauen, als mit ihnen auf noch eine langweilige Party zu gehen. Die Kinder spielten im Garten,
während ihre Eltern das Abendessen vorbereiteten. Hörst du das? Da drüben bewegt sich etwas im
Gebüsch. Bleib hinter mir. Wenn du mich wirklich lieben würdest, würdest du mir die Wahrheit
darüber sagen, was in jener Nacht passiert ist. Alles wird gut. Atme einfach, schließ die Augen
und zähl bis zehn. Wer von euch hat meine Schlüssel genommen? Sie lagen gerade noch hier auf dem
Tisch. Unser Lehrer sagte, dass die Geschichtsprüfung viel schwerer sein würde als die letzte.
Es ist schon spät. Du solltest schlafen gehen, denn morgen wird ein langer Tag.
Das waren die glücklichsten Jahre meines Lebens, und ich werde sie nie vergessen.
)";

constexpr std::string_view kFrench = R"(
Où est-ce que tu vas ? Je t'ai dit de m'attendre à la gare. Ce n'est pas prudent de marcher
seul dans la ville pendant la nuit. Je sais, je sais, mais je ne pouvais pas rester là-bas plus
longtemps. Le train avait encore du retard et les gens me regardaient. Qu'est-ce qui est arrivé
à ton téléphone ? Je crois que je l'ai laissé dans la voiture. Nous devons y retourner et le
trouver avant eux. Merci beaucoup pour tout ce que vous avez fait pour notre famille. Entrez,
je vous en prie, et asseyez-vous. Voulez-vous quelque chose à boire ? Il y a du café dans la
cuisine et aussi du thé. C'était la plus belle femme qu'il ait jamais vue, et il ne pouvait pas
s'empêcher de penser à elle. Ils ont marché le long de la rivière jusqu'à ce que le soleil se
couche derrière la vieille église sur la colline. Personne ne l'a cru quand il a dit qu'il avait
vu le fantôme de son grand-père. Je suis désolé, mais je ne peux pas t'aider avec ça. Tu devrais
demander au médecin demain matin. Pourquoi est-ce que quelqu'un voudrait lui faire du mal ?
Écoute-moi bien. Si quelque chose tourne mal, tu cours et tu ne te retournes pas. C'est le plus
beau jour de ma vie. Le temps sera froid et venteux ce week-end, avec de fortes pluies dans le
nord. Il a ouvert la porte lentement et a regardé à l'intérieur, mais la chambre était sombre et
complètement vide. Mon frère travaille à l'hôpital et ma sœur étudie encore à l'université.
Ne t'inquiète pas pour l'argent. Nous allons trouver une solution ensemble, comme toujours.
Les enfants jouaient dans le jardin pendant que leurs parents préparaient le dîner.
Tout va bien se passer. Respire, ferme les yeux et compte jusqu'à dix.
)";

constexpr std::string_view kSpanish = R"(
¿Adónde vas? Te dije que me esperaras en la estación. No es seguro caminar solo por la ciudad
de noche. Lo sé, lo sé, pero no podía quedarme allí más tiempo. El tren llegó tarde otra vez y
la gente me estaba mirando. ¿Qué le pasó a tu teléfono? Creo que lo dejé en el coche. Tenemos
que volver y encontrarlo antes que ellos. Muchas gracias por todo lo que ha hecho por nuestra
familia. Por favor, pase y siéntese. ¿Quiere algo de beber? Hay café en la cocina y también un
poco de té. Era la mujer más hermosa que había visto nunca, y no podía dejar de pensar en ella.
Caminaron por la orilla del río hasta que el sol se puso detrás de la vieja iglesia de la colina.
Nadie le creyó cuando dijo que había visto el fantasma de su abuelo. Lo siento, pero no puedo
ayudarte con eso. Deberías preguntarle al médico mañana por la mañana. ¿Por qué alguien querría
hacerle daño? Escúchame con atención. Si algo sale mal, corres y no miras atrás. Este es el mejor
día de mi vida. El tiempo será frío y con viento este fin de semana, con lluvias fuertes en el
norte. Abrió la puerta despacio y miró dentro, pero la habitación estaba oscura y completamente
vacía. Mi hermano trabaja en el hospital y mi hermana todavía estudia en la universidad.
No te preocupes por el dinero. Encontraremos una solución juntos, como siempre.
Los niños jugaban en el jardín mientras sus padres preparaban la cena.
Todo va a salir bien. Respira, cierra los ojos y cuenta hasta diez.
)";

}  // namespace

const std::map<std::string, std::string_view>& builtin_language_samples() {
  static const std::map<std::string, std::string_view> samples = {
      {"de", kGerman}, {"en", kEnglish}, {"es", kSpanish}, {"fr", kFrench}};
  return samples;
}

}  // namespace apekit
